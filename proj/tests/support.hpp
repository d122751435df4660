#pragma once

#include <string>
#include <vector>

#include "fparadox/fparadox.hpp"

namespace support {

using namespace fparadox;

inline Graph family(Family f, std::size_t n = 0, std::size_t k = 0, double p = 0.0, std::size_t m = 0,
                    std::uint64_t seed = 0) {
    return make(FamilySpec{f, n, k, p, m, seed});
}

inline Graph figure1() { return family(Family::figure1); }
inline Graph hub_cycle(std::size_t n) { return family(Family::hub_cycle, n); }
inline Graph three_node() { return family(Family::three_node); }
inline Graph cycle(std::size_t n) { return family(Family::cycle, n); }
inline Graph directed_cycle(std::size_t n) { return family(Family::directed_cycle, n); }
inline Graph star(std::size_t leaves) { return family(Family::star_undirected, leaves + 1); }

inline std::string fixture(const std::string& name) { return std::string(FPARADOX_FIXTURE_DIR) + "/" + name; }

inline std::vector<double> v(std::initializer_list<double> xs) { return xs; }

} // namespace support
