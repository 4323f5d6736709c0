#ifndef VOTEINSPECT_INSTANCE_IO_HPP
#define VOTEINSPECT_INSTANCE_IO_HPP

#include <filesystem>
#include <string>
#include <string_view>

#include "voteinspect/election.hpp"

namespace voteinspect {

// Instance files are JSON objects
//   {"n": int, "d": int, "costs": [float; n], "probs": [[float; d]; n]}
// where costs[i] and probs[i] describe voter i+1 and probs[i][j] is the
// probability that the voter picks candidate j+1.
//
// Parse failures are reported as InstanceError with the field path.

Instance parse_instance(std::string_view text);
Instance load_instance(const std::filesystem::path& path);

std::string dump_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::filesystem::path& path);

}  // namespace voteinspect

#endif  // VOTEINSPECT_INSTANCE_IO_HPP
