#ifndef POROLUB_CSV_HPP
#define POROLUB_CSV_HPP

#include <cstdint>
#include <string>

namespace porolub {

// Shortest round-trippable decimal form, 17 significant digits.
std::string format_g17(double v);

// FNV-1a over the bytes of a string; used to stamp outputs with a config hash.
std::uint64_t fnv1a(const std::string& text);

std::string hash_hex(std::uint64_t h);

}  // namespace porolub

#endif
