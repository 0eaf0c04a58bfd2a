#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rff/errors.hpp"

namespace rff {

// m sampled frequencies ω_{1:m} ⊂ R^d with provenance (measure id, seed).
// Immutable; backs the kernel and derivative estimators.
class FeatureSet {
public:
    FeatureSet(std::vector<double> omegas_row_major, std::int64_t m, int d,
               std::string measure_id, std::uint64_t seed)
        : omegas_(std::move(omegas_row_major)), m_(m), d_(d),
          measure_id_(std::move(measure_id)), seed_(seed) {
        if (m_ < 1) throw InvalidParameterError("FeatureSet: m must be >= 1");
        if (d_ < 1) throw InvalidParameterError("FeatureSet: d must be >= 1");
        if (omegas_.size() != static_cast<std::size_t>(m_) * static_cast<std::size_t>(d_))
            throw InvalidParameterError("FeatureSet: matrix size mismatch");
    }

    std::int64_t size() const { return m_; } // number of frequencies m
    int dim() const { return d_; }

    std::span<const double> row(std::int64_t j) const {
        return {omegas_.data() + static_cast<std::size_t>(j) * static_cast<std::size_t>(d_),
                static_cast<std::size_t>(d_)};
    }

    const std::vector<double>& data() const { return omegas_; }
    const std::string& measure_id() const { return measure_id_; }
    std::uint64_t seed() const { return seed_; }

    // Flat CSV dump: header row `m,d,seed,measure_id`, one metadata row, then
    // the ω matrix row-major with 17 significant digits (lossless round-trip).
    void save_csv(const std::filesystem::path& path) const;
    static FeatureSet load_csv(const std::filesystem::path& path);

private:
    std::vector<double> omegas_; // row-major m×d
    std::int64_t m_;
    int d_;
    std::string measure_id_;
    std::uint64_t seed_;
};

} // namespace rff
