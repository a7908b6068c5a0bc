#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gaussres {

// Bookkeeping for a register of bosonic modes grouped by frequency.
//
// Flat mode order is frequency-major: all spatial modes of the lowest
// frequency first, then the next frequency, and so on. Quadratures are
// interleaved per mode (q1, p1, q2, p2, ...), so mode m owns rows/columns
// 2m and 2m+1 of any phase-space object.
//
// The common case has the same spatial count at every frequency; a
// per-frequency count vector is supported so that partial traces stay
// representable when they leave sectors of unequal size.
class ModeTable {
public:
    ModeTable(std::vector<double> omegas, int spatial_modes)
        : ModeTable(uniform_layout(std::move(omegas), spatial_modes)) {}

    ModeTable(std::vector<double> omegas, std::vector<int> counts)
        : omegas_(std::move(omegas)), counts_(std::move(counts)) {
        if (omegas_.empty())
            throw std::invalid_argument("ModeTable: at least one frequency required");
        if (omegas_.size() != counts_.size())
            throw std::invalid_argument("ModeTable: one spatial count per frequency required");
        for (std::size_t f = 0; f < omegas_.size(); ++f) {
            if (!(omegas_[f] > 0.0))
                throw std::invalid_argument("ModeTable: frequencies must be positive");
            if (f > 0 && !(omegas_[f] > omegas_[f - 1]))
                throw std::invalid_argument("ModeTable: frequencies must be strictly increasing");
            if (counts_[f] < 1)
                throw std::invalid_argument("ModeTable: each frequency needs at least one mode");
        }
        offsets_.resize(counts_.size() + 1, 0);
        for (std::size_t f = 0; f < counts_.size(); ++f)
            offsets_[f + 1] = offsets_[f] + counts_[f];
    }

    static ModeTable single_frequency(double omega, int spatial_modes) {
        return ModeTable(std::vector<double>{omega}, spatial_modes);
    }

    [[nodiscard]] int frequency_count() const { return static_cast<int>(omegas_.size()); }
    [[nodiscard]] int mode_count() const { return offsets_.back(); }
    [[nodiscard]] int dim() const { return 2 * mode_count(); }

    [[nodiscard]] double omega(int f) const { return omegas_.at(static_cast<std::size_t>(f)); }
    [[nodiscard]] const std::vector<double>& omegas() const { return omegas_; }
    [[nodiscard]] int spatial_count(int f) const { return counts_.at(static_cast<std::size_t>(f)); }
    [[nodiscard]] const std::vector<int>& spatial_counts() const { return counts_; }

    // First flat mode index of frequency sector f.
    [[nodiscard]] int first_mode(int f) const { return offsets_.at(static_cast<std::size_t>(f)); }

    [[nodiscard]] int frequency_of(int mode) const {
        if (mode < 0 || mode >= mode_count())
            throw std::out_of_range("ModeTable: mode index " + std::to_string(mode) +
                                    " out of range for M=" + std::to_string(mode_count()));
        auto it = std::upper_bound(offsets_.begin(), offsets_.end(), mode);
        return static_cast<int>(it - offsets_.begin()) - 1;
    }

    [[nodiscard]] bool uniform() const {
        return std::all_of(counts_.begin(), counts_.end(),
                           [&](int c) { return c == counts_.front(); });
    }

    [[nodiscard]] int uniform_spatial_count() const {
        if (!uniform())
            throw std::logic_error("ModeTable: spatial counts differ across frequencies");
        return counts_.front();
    }

    friend bool operator==(const ModeTable& a, const ModeTable& b) {
        return a.omegas_ == b.omegas_ && a.counts_ == b.counts_;
    }
    friend bool operator!=(const ModeTable& a, const ModeTable& b) { return !(a == b); }

private:
    using Layout = std::pair<std::vector<double>, std::vector<int>>;

    explicit ModeTable(Layout l) : ModeTable(std::move(l.first), std::move(l.second)) {}

    static Layout uniform_layout(std::vector<double> omegas, int spatial_modes) {
        if (spatial_modes < 1)
            throw std::invalid_argument("ModeTable: spatial_modes must be >= 1");
        std::vector<int> counts(omegas.size(), spatial_modes);
        return {std::move(omegas), std::move(counts)};
    }

    std::vector<double> omegas_;
    std::vector<int> counts_;
    std::vector<int> offsets_;
};

}  // namespace gaussres
