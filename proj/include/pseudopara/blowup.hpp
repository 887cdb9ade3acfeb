#pragma once

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pseudopara {

enum class Outcome { Blowup, Bounded, Undecided };

std::string to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

struct NormSample {
    double t = 0.0;
    double sup_norm = 0.0;
};

struct BlowupReport {
    Outcome outcome = Outcome::Undecided;
    std::optional<double> t_star_estimate;
    std::optional<double> fit_exponent;  // alpha in sup ~ C (T* - t)^(-alpha)
    double fit_residual = 0.0;
    std::optional<double> threshold_hit_time;
    bool diverged = false;
    double final_time = 0.0;
    double final_sup_norm = 0.0;
    std::size_t steps = 0;
};

/// blowup: threshold crossed or the run diverged.
/// bounded: reached the horizon with final sup < threshold/2 and a
///          last-decade growth factor sup(t_end)/sup(t_end/10) below 1.05.
/// undecided: anything else.
Outcome detect(const std::vector<NormSample>& series, double threshold, double horizon,
               bool diverged = false);

/// sup(t_end) / sup(t_end / 10), sup interpolated linearly in t.
double last_decade_growth(const std::vector<NormSample>& series);

/// True when the sup-norm never decreases over [t_end/10, t_end].
bool monotone_last_decade(const std::vector<NormSample>& series);

struct TStarEstimate {
    double t_star = 0.0;
    std::optional<double> fit_exponent;
    double fit_residual = 0.0;
    std::size_t window = 0;
};

/// Fits sup^-(p-1) linearly in t over the growth window (trailing, strictly
/// increasing samples with sup >= 0.1 * reference; reference defaults to the
/// largest sample) and returns the root. Needs >= 10 window samples.
TStarEstimate estimate_t_star(const std::vector<NormSample>& series, double p,
                              std::optional<double> threshold = std::nullopt);

nlohmann::ordered_json to_json(const BlowupReport& r);

}  // namespace pseudopara
