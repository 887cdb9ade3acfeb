#include "pseudopara/blowup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pseudopara {

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::Blowup:
        return "blowup";
    case Outcome::Bounded:
        return "bounded";
    case Outcome::Undecided:
        return "undecided";
    }
    return "undecided";
}

Outcome outcome_from_string(const std::string& s) {
    if (s == "blowup") {
        return Outcome::Blowup;
    }
    if (s == "bounded") {
        return Outcome::Bounded;
    }
    if (s == "undecided") {
        return Outcome::Undecided;
    }
    throw std::invalid_argument("unknown outcome '" + s + "'");
}

namespace {

double sup_at(const std::vector<NormSample>& series, double t) {
    auto it = std::lower_bound(series.begin(), series.end(), t,
                               [](const NormSample& s, double v) { return s.t < v; });
    if (it == series.begin()) {
        return it->sup_norm;
    }
    if (it == series.end()) {
        return series.back().sup_norm;
    }
    const auto& b = *it;
    const auto& a = *(it - 1);
    if (b.t == a.t) {
        return b.sup_norm;
    }
    const double w = (t - a.t) / (b.t - a.t);
    return a.sup_norm + w * (b.sup_norm - a.sup_norm);
}

}  // namespace

double last_decade_growth(const std::vector<NormSample>& series) {
    if (series.empty()) {
        throw std::invalid_argument("last_decade_growth: empty series");
    }
    const double t_end = series.back().t;
    const double a = sup_at(series, t_end / 10.0);
    const double b = series.back().sup_norm;
    if (a == 0.0) {
        return b == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    }
    return b / a;
}

bool monotone_last_decade(const std::vector<NormSample>& series) {
    if (series.empty()) {
        return false;
    }
    const double t0 = series.back().t / 10.0;
    double prev = -1.0;
    for (const auto& s : series) {
        if (s.t < t0) {
            continue;
        }
        if (s.sup_norm < prev) {
            return false;
        }
        prev = s.sup_norm;
    }
    return true;
}

Outcome detect(const std::vector<NormSample>& series, double threshold, double horizon, bool diverged) {
    if (diverged) {
        return Outcome::Blowup;
    }
    if (series.empty()) {
        return Outcome::Undecided;
    }
    for (const auto& s : series) {
        if (!std::isfinite(s.sup_norm) || s.sup_norm >= threshold) {
            return Outcome::Blowup;
        }
    }
    const auto& last = series.back();
    const bool reached = last.t >= horizon * (1.0 - 1e-12);
    if (reached && last.sup_norm < 0.5 * threshold && last_decade_growth(series) < 1.05) {
        return Outcome::Bounded;
    }
    return Outcome::Undecided;
}

TStarEstimate estimate_t_star(const std::vector<NormSample>& series, double p,
                              std::optional<double> threshold) {
    if (!(p > 1.0)) {
        throw std::invalid_argument("estimate_t_star: p must exceed 1");
    }
    if (series.size() < 10) {
        throw std::invalid_argument("estimate_t_star: need at least 10 samples");
    }
    double ref = 0.0;
    for (const auto& s : series) {
        ref = std::max(ref, s.sup_norm);
    }
    if (threshold) {
        ref = std::min(ref, *threshold);
    }
    const double floor = 0.1 * ref;
    std::size_t begin = series.size() - 1;
    while (begin > 0) {
        const auto& prev = series[begin - 1];
        const auto& cur = series[begin];
        if (!(prev.sup_norm < cur.sup_norm) || !(prev.t < cur.t) || prev.sup_norm < floor) {
            break;
        }
        --begin;
    }
    const std::size_t n = series.size() - begin;
    if (n < 10) {
        throw std::runtime_error("estimate_t_star: growth window has fewer than 10 samples");
    }

    const double e = p - 1.0;
    double st = 0, sy = 0, stt = 0, sty = 0;
    for (std::size_t i = begin; i < series.size(); ++i) {
        const double t = series[i].t;
        const double y = std::pow(series[i].sup_norm, -e);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
    }
    const double dn = static_cast<double>(n);
    const double den = dn * stt - st * st;
    if (den == 0.0) {
        throw std::runtime_error("estimate_t_star: degenerate window");
    }
    const double slope = (dn * sty - st * sy) / den;
    const double icpt = (sy - slope * st) / dn;
    if (!(slope < 0.0)) {
        throw std::runtime_error("estimate_t_star: sup^-(p-1) is not decreasing");
    }
    TStarEstimate out;
    out.t_star = -icpt / slope;
    out.window = n;

    double ss = 0.0, yy = 0.0;
    for (std::size_t i = begin; i < series.size(); ++i) {
        const double y = std::pow(series[i].sup_norm, -e);
        const double r = y - (icpt + slope * series[i].t);
        ss += r * r;
        yy = std::max(yy, std::abs(y));
    }
    out.fit_residual = yy > 0.0 ? std::sqrt(ss / dn) / yy : 0.0;

    // free exponent: log sup = c - alpha log(T* - t)
    double sx = 0, sl = 0, sxx = 0, sxl = 0;
    std::size_t m = 0;
    for (std::size_t i = begin; i < series.size(); ++i) {
        const double gap = out.t_star - series[i].t;
        if (gap <= 0.0) {
            continue;
        }
        const double x = std::log(gap);
        const double l = std::log(series[i].sup_norm);
        sx += x;
        sl += l;
        sxx += x * x;
        sxl += x * l;
        ++m;
    }
    if (m >= 3) {
        const double dm = static_cast<double>(m);
        const double d = dm * sxx - sx * sx;
        if (d > 0.0) {
            out.fit_exponent = -(dm * sxl - sx * sl) / d;
        }
    }
    return out;
}

nlohmann::ordered_json to_json(const BlowupReport& r) {
    nlohmann::ordered_json j;
    j["outcome"] = to_string(r.outcome);
    j["t_star_estimate"] = r.t_star_estimate ? nlohmann::ordered_json(*r.t_star_estimate) : nullptr;
    j["fit_exponent"] = r.fit_exponent ? nlohmann::ordered_json(*r.fit_exponent) : nullptr;
    j["fit_residual"] = std::isfinite(r.fit_residual) ? nlohmann::ordered_json(r.fit_residual) : nullptr;
    j["threshold_hit_time"] =
        r.threshold_hit_time ? nlohmann::ordered_json(*r.threshold_hit_time) : nullptr;
    j["diverged"] = r.diverged;
    j["final_time"] = r.final_time;
    j["final_sup_norm"] = r.final_sup_norm;
    j["steps"] = r.steps;
    return j;
}

}  // namespace pseudopara
