#include "pseudopara/profile.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace pseudopara {

namespace {

struct KindInfo {
    RadialProfile::Kind kind;
    const char* name;
    std::size_t arity;
};

constexpr KindInfo kKinds[] = {
    {RadialProfile::Kind::Zero, "zero", 0},
    {RadialProfile::Kind::Constant, "constant", 1},
    {RadialProfile::Kind::Gaussian, "gaussian", 2},
    {RadialProfile::Kind::PolyGaussian, "poly_gaussian", 2},
    {RadialProfile::Kind::RadialMode, "radial_mode", 1},
    {RadialProfile::Kind::HeatKernel, "heat_kernel", 2},
};

const KindInfo& info(RadialProfile::Kind kind) {
    for (const auto& k : kKinds) {
        if (k.kind == kind) {
            return k;
        }
    }
    throw std::logic_error("unknown profile kind");
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

double parse_number(const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != t.size()) {
        throw std::invalid_argument("expected a number, got '" + t + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

RadialProfile::RadialProfile(Kind kind, std::vector<double> args)
    : kind_(kind), args_(std::move(args)) {
    const auto& k = info(kind);
    if (args_.size() != k.arity) {
        throw std::invalid_argument(std::string("profile '") + k.name + "' takes " +
                                    std::to_string(k.arity) + " argument(s)");
    }
    if ((kind == Kind::Gaussian && !(args_[1] > 0.0)) ||
        (kind == Kind::RadialMode && !(args_[0] > 0.0)) ||
        (kind == Kind::HeatKernel && !(args_[0] > 0.0 && args_[1] >= 1.0))) {
        throw std::invalid_argument(std::string("profile '") + k.name + "': invalid argument");
    }
}

RadialProfile RadialProfile::parse(const std::string& text) {
    const std::string t = trim(text);
    const auto open = t.find('(');
    const std::string name = trim(open == std::string::npos ? t : t.substr(0, open));
    std::vector<double> args;
    if (open != std::string::npos) {
        const auto close = t.rfind(')');
        if (close == std::string::npos || close < open || trim(t.substr(close + 1)) != "") {
            throw std::invalid_argument("malformed profile '" + t + "'");
        }
        const std::string inner = t.substr(open + 1, close - open - 1);
        std::size_t start = 0;
        if (!trim(inner).empty()) {
            while (true) {
                const auto comma = inner.find(',', start);
                args.push_back(parse_number(inner.substr(start, comma - start)));
                if (comma == std::string::npos) {
                    break;
                }
                start = comma + 1;
            }
        }
    }
    for (const auto& k : kKinds) {
        if (name == k.name) {
            return RadialProfile(k.kind, std::move(args));
        }
    }
    throw std::invalid_argument("unknown profile '" + name + "'");
}

double RadialProfile::operator()(double r) const {
    switch (kind_) {
    case Kind::Zero:
        return 0.0;
    case Kind::Constant:
        return args_[0];
    case Kind::Gaussian:
        return args_[0] * std::exp(-(r * r) / (args_[1] * args_[1]));
    case Kind::PolyGaussian:
        return (args_[0] - args_[1] * r * r) * std::exp(-r * r);
    case Kind::RadialMode: {
        const double x = std::numbers::pi * r / args_[0];
        return x == 0.0 ? 1.0 : std::sin(x) / x;
    }
    case Kind::HeatKernel: {
        const double t0 = args_[0];
        return std::pow(4.0 * std::numbers::pi * t0, -0.5 * args_[1]) * std::exp(-r * r / (4.0 * t0));
    }
    }
    return 0.0;
}

std::string RadialProfile::to_string() const {
    const auto& k = info(kind_);
    std::string out = k.name;
    if (k.arity == 0) {
        return out;
    }
    out += '(';
    for (std::size_t i = 0; i < args_.size(); ++i) {
        if (i) {
            out += ", ";
        }
        out += format_double(args_[i]);
    }
    out += ')';
    return out;
}

}  // namespace pseudopara
