#pragma once

#include <cstdint>
#include <string>

namespace irfeed {

std::string sha256_hex(const std::string& data);

// Stable 64-bit string hash (FNV-1a); independent of std::hash so seeds
// are reproducible across builds.
uint64_t fnv1a64(const std::string& data);

uint64_t splitmix64(uint64_t x);

// Temperature bucket used for replay keys and stub seeding: one decimal.
std::string temperature_bucket(double temperature);

}  // namespace irfeed
