/**
 * @file cli.hpp
 * @brief Command-line driver shared by the lmmrgre executable and the tests.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lmm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNumerical = 2;

/**
 * @brief Runs one subcommand. args[0] is the program name.
 *
 * Subcommands: solve, rgre, converge, gamma, stability-region,
 * stability-angle, root-condition. Returns 0 on success, 1 on usage errors
 * (message on `err`), 2 on numerical failures such as Newton divergence.
 */
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lmm::cli
