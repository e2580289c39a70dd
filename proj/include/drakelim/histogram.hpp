#pragma once

// Fixed-width histogram over log10 values, with explicit underflow and
// overflow bins so the total always equals the number of samples added.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace drakelim {

struct HistogramSpec {
    double log10_min = -120.0;
    double log10_max = 20.0;
    std::uint32_t n_bins = 280;  // 0.5 decades per bin at the defaults

    double bin_width() const { return (log10_max - log10_min) / n_bins; }
    bool operator==(const HistogramSpec&) const = default;
};

inline std::vector<std::string> validate(const HistogramSpec& spec) {
    std::vector<std::string> bad;
    if (!(std::isfinite(spec.log10_min) && std::isfinite(spec.log10_max) &&
          spec.log10_min < spec.log10_max)) {
        bad.push_back("histogram: requires finite log10_min < log10_max");
    }
    if (spec.n_bins < 1) {
        bad.push_back("histogram.n_bins: must be >= 1");
    }
    return bad;
}

class Histogram {
public:
    Histogram() : Histogram(HistogramSpec{}) {}
    explicit Histogram(HistogramSpec spec) : spec_(spec), counts_(spec.n_bins, 0) {}

    const HistogramSpec& spec() const { return spec_; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    std::uint64_t underflow() const { return underflow_; }
    std::uint64_t overflow() const { return overflow_; }

    // -inf lands in underflow, values at or past log10_max in overflow.
    void add(double log10_value) {
        if (log10_value < spec_.log10_min) {
            ++underflow_;
            return;
        }
        const double pos = (log10_value - spec_.log10_min) / spec_.bin_width();
        const auto idx = static_cast<std::uint64_t>(pos);
        if (pos >= static_cast<double>(spec_.n_bins) || idx >= counts_.size()) {
            ++overflow_;
            return;
        }
        ++counts_[idx];
    }

    void merge(const Histogram& other) {
        if (!(spec_ == other.spec_)) {
            throw std::invalid_argument("Histogram::merge: bin layouts differ");
        }
        underflow_ += other.underflow_;
        overflow_ += other.overflow_;
        for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    }

    std::uint64_t total() const {
        return underflow_ + overflow_ +
               std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
    }

    double bin_low(std::size_t i) const { return spec_.log10_min + i * spec_.bin_width(); }
    double bin_high(std::size_t i) const { return spec_.log10_min + (i + 1) * spec_.bin_width(); }

    bool operator==(const Histogram&) const = default;

    // used by deserialization
    void set_counts(std::vector<std::uint64_t> counts, std::uint64_t under, std::uint64_t over) {
        if (counts.size() != spec_.n_bins) {
            throw std::invalid_argument("Histogram: counts length does not match n_bins");
        }
        counts_ = std::move(counts);
        underflow_ = under;
        overflow_ = over;
    }

private:
    HistogramSpec spec_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t underflow_ = 0;
    std::uint64_t overflow_ = 0;
};

}  // namespace drakelim
