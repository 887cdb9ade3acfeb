#include "pseudopara/kernels.hpp"

#include <algorithm>
#include <stdexcept>

namespace pseudopara {

void History::append(std::span<const double> values) {
    if (values.size() != width_) {
        throw std::invalid_argument("History::append: width mismatch");
    }
    data_.insert(data_.end(), values.begin(), values.end());
}

void History::keep_last_only() {
    if (rows() > 1) {
        data_.erase(data_.begin(), data_.end() - static_cast<std::ptrdiff_t>(width_));
    }
}

namespace {

void check_shapes(std::span<const double> weights, const History& history, std::span<double> out) {
    if (weights.size() != history.rows() || out.size() != history.width()) {
        throw std::invalid_argument("memory_term: shape mismatch");
    }
}

constexpr std::size_t kBlock = 256;
constexpr std::size_t kParallelWork = 1u << 16;

}  // namespace

void memory_term_serial(std::span<const double> weights, const History& history,
                        std::span<double> out) {
    check_shapes(weights, history, out);
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t j = 0; j < weights.size(); ++j) {
        const double w = weights[j];
        const auto row = history.row(j);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] += w * row[i];
        }
    }
}

void memory_term(std::span<const double> weights, const History& history, std::span<double> out) {
    check_shapes(weights, history, out);
    const std::size_t width = out.size();
    const std::size_t rows = weights.size();
    const std::size_t blocks = (width + kBlock - 1) / kBlock;
    const double* w = weights.data();
    const double* h = history.data().data();
    double* o = out.data();
    const bool parallel = rows * width >= kParallelWork && blocks > 1;

#pragma omp parallel for schedule(static) if (parallel)
    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t i0 = b * kBlock;
        const std::size_t i1 = std::min(width, i0 + kBlock);
        for (std::size_t i = i0; i < i1; ++i) {
            o[i] = 0.0;
        }
        for (std::size_t j = 0; j < rows; ++j) {
            const double wj = w[j];
            const double* row = h + j * width;
            for (std::size_t i = i0; i < i1; ++i) {
                o[i] += wj * row[i];
            }
        }
    }
}

}  // namespace pseudopara
