#include "rff/feature_set.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rff {

void FeatureSet::save_csv(const std::filesystem::path& path) const {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("FeatureSet::save_csv: cannot open " + path.string());
    os << "m,d,seed,measure_id\n";
    os << m_ << "," << d_ << "," << seed_ << "," << measure_id_ << "\n";
    char buf[64];
    for (std::int64_t j = 0; j < m_; ++j) {
        for (int i = 0; i < d_; ++i) {
            std::snprintf(buf, sizeof buf, "%.17g",
                          omegas_[static_cast<std::size_t>(j) * d_ + static_cast<std::size_t>(i)]);
            os << (i ? "," : "") << buf;
        }
        os << "\n";
    }
}

FeatureSet FeatureSet::load_csv(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("FeatureSet::load_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(is, line) || line.rfind("m,d,seed,measure_id", 0) != 0)
        throw std::runtime_error("FeatureSet::load_csv: bad header in " + path.string());
    if (!std::getline(is, line))
        throw std::runtime_error("FeatureSet::load_csv: missing metadata row");

    std::int64_t m = 0;
    int d          = 0;
    std::uint64_t seed = 0;
    std::string measure_id;
    {
        std::istringstream meta(line);
        std::string field;
        std::getline(meta, field, ',');
        m = std::stoll(field);
        std::getline(meta, field, ',');
        d = std::stoi(field);
        std::getline(meta, field, ',');
        seed = std::stoull(field);
        std::getline(meta, measure_id); // the id itself may contain commas; take the rest
    }

    std::vector<double> rows;
    rows.reserve(static_cast<std::size_t>(m) * static_cast<std::size_t>(d));
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) rows.push_back(std::stod(field));
    }
    return FeatureSet(std::move(rows), m, d, std::move(measure_id), seed);
}

} // namespace rff
