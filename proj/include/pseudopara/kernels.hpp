#pragma once

// Memory convolution M_i = sum_j w_j H[j][i] over the |u|^p history. This is
// the O(steps * nodes) inner loop of the solver. The OpenMP kernel splits the
// node range into blocks; every node accumulates in the same j order as the
// serial reference, so both produce identical bits.

#include <cstddef>
#include <span>
#include <vector>

namespace pseudopara {

/// Append-only row-major store: row j holds nodal values at time t_j.
class History {
public:
    explicit History(std::size_t width = 0) : width_(width) {}

    std::size_t width() const noexcept { return width_; }
    std::size_t rows() const noexcept { return width_ == 0 ? 0 : data_.size() / width_; }
    std::span<const double> row(std::size_t j) const {
        return {data_.data() + j * width_, width_};
    }
    std::span<const double> data() const noexcept { return data_; }

    void append(std::span<const double> values);
    /// Keeps only the newest row (local-in-time problems need nothing older).
    void keep_last_only();

private:
    std::size_t width_;
    std::vector<double> data_;
};

void memory_term_serial(std::span<const double> weights, const History& history,
                        std::span<double> out);

void memory_term(std::span<const double> weights, const History& history, std::span<double> out);

}  // namespace pseudopara
