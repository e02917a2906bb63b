/**
 * Seeds for randomized property tests. Every test derives its generator
 * seed from a fixed local value plus the run-wide offset given by --seed
 * (default 0), so a plain run is reproducible and --seed explores new cases.
 */
#pragma once

#include <cstdint>

namespace dressian::testdata {

inline std::uint64_t& seed_offset() {
    static std::uint64_t offset = 0;
    return offset;
}

inline std::uint64_t test_seed(std::uint64_t local) { return local + seed_offset(); }

}  // namespace dressian::testdata
