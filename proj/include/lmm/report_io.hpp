/**
 * @file report_io.hpp
 * @brief CSV and JSON encodings of reports, region scans, loci and trajectories.
 *
 * CSV headers are fixed:
 *   convergence report   n,max_error,estimated_order,f_evals
 *   region scan          re_mu,im_mu,stable,excluded
 *   boundary locus       theta,re_mu,im_mu
 *   trajectory           t,y1,...,ym
 * Reals are written as the shortest decimal that round-trips; an absent
 * estimated order is an empty field.
 */
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "lmm/harness.hpp"
#include "lmm/stability.hpp"

namespace lmm {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest round-trip decimal form of x.
std::string format_real(double x);

/// Metadata carried by every JSON document.
struct ReportMetadata {
  std::string method;
  int ell = 0;
  std::string problem;
};

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);
void write_convergence_json(std::ostream& out, const ConvergenceReport& report);

/// Parses the convergence CSV back (method/ell/problem are left empty).
/// Malformed input throws std::invalid_argument naming the offending column or line.
ConvergenceReport read_convergence_csv(std::istream& in);

void write_region_csv(std::ostream& out, const std::vector<RegionSample>& samples);
void write_region_json(std::ostream& out, const std::vector<RegionSample>& samples,
                       const ReportMetadata& meta);

void write_locus_csv(std::ostream& out, const BoundaryLocus& locus);
void write_locus_json(std::ostream& out, const BoundaryLocus& locus, const ReportMetadata& meta);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_json(std::ostream& out, const Trajectory& traj, const ReportMetadata& meta);

}  // namespace lmm
