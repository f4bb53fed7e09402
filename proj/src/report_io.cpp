#include "lmm/report_io.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lmm {

namespace {

using nlohmann::json;

json metadata_json(const std::string& method, int ell, const std::string& problem) {
  return {{"method", method},
          {"ell", ell},
          {"problem", problem},
          {"generated_by_version", kVersion}};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

template <class T>
T parse_field(const std::string& text, const char* column, int line_no) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument(std::string("column '") + column + "' line " +
                                std::to_string(line_no) + ": cannot parse '" + text + "'");
  }
  return value;
}

}  // namespace

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return {buf, ptr};
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
  out << "n,max_error,estimated_order,f_evals\n";
  for (const auto& row : report.rows) {
    out << row.n_coarse << ',' << format_real(row.max_error) << ','
        << (row.estimated_order ? format_real(*row.estimated_order) : "") << ',' << row.f_evals
        << '\n';
  }
}

void write_convergence_json(std::ostream& out, const ConvergenceReport& report) {
  json rows = json::array();
  for (const auto& row : report.rows) {
    rows.push_back({{"n", row.n_coarse},
                    {"max_error", row.max_error},
                    {"estimated_order",
                     row.estimated_order ? json(*row.estimated_order) : json(nullptr)},
                    {"f_evals", row.f_evals}});
  }
  json doc{{"metadata", metadata_json(report.method, report.ell, report.problem)},
           {"rows", rows}};
  out << doc.dump(2) << '\n';
}

ConvergenceReport read_convergence_csv(std::istream& in) {
  static const std::vector<std::string> kColumns{"n", "max_error", "estimated_order", "f_evals"};
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("convergence CSV is empty");
  }
  const auto header = split(line, ',');
  for (std::size_t i = 0; i < kColumns.size(); ++i) {
    if (i >= header.size() || header[i] != kColumns[i]) {
      throw std::invalid_argument("convergence CSV: expected column '" + kColumns[i] + "'");
    }
  }
  ConvergenceReport report;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != kColumns.size()) {
      throw std::invalid_argument("convergence CSV line " + std::to_string(line_no) +
                                  ": expected 4 fields");
    }
    ConvergenceRow row;
    row.n_coarse = parse_field<long>(fields[0], "n", line_no);
    row.max_error = parse_field<double>(fields[1], "max_error", line_no);
    if (!fields[2].empty()) {
      row.estimated_order = parse_field<double>(fields[2], "estimated_order", line_no);
    }
    row.f_evals = parse_field<long>(fields[3], "f_evals", line_no);
    report.rows.push_back(row);
  }
  if (report.rows.empty()) {
    throw std::invalid_argument("convergence CSV has no data rows");
  }
  return report;
}

void write_region_csv(std::ostream& out, const std::vector<RegionSample>& samples) {
  out << "re_mu,im_mu,stable,excluded\n";
  for (const auto& s : samples) {
    out << format_real(s.mu.real()) << ',' << format_real(s.mu.imag()) << ','
        << (s.stable ? 1 : 0) << ',' << (s.excluded ? 1 : 0) << '\n';
  }
}

void write_region_json(std::ostream& out, const std::vector<RegionSample>& samples,
                       const ReportMetadata& meta) {
  json rows = json::array();
  for (const auto& s : samples) {
    rows.push_back({{"re_mu", s.mu.real()},
                    {"im_mu", s.mu.imag()},
                    {"stable", s.stable ? 1 : 0},
                    {"excluded", s.excluded ? 1 : 0}});
  }
  json doc{{"metadata", metadata_json(meta.method, meta.ell, meta.problem)}, {"rows", rows}};
  out << doc.dump(2) << '\n';
}

void write_locus_csv(std::ostream& out, const BoundaryLocus& locus) {
  out << "theta,re_mu,im_mu\n";
  for (std::size_t i = 0; i < locus.mu.size(); ++i) {
    out << format_real(locus.theta[i]) << ',' << format_real(locus.mu[i].real()) << ','
        << format_real(locus.mu[i].imag()) << '\n';
  }
}

void write_locus_json(std::ostream& out, const BoundaryLocus& locus, const ReportMetadata& meta) {
  json rows = json::array();
  for (std::size_t i = 0; i < locus.mu.size(); ++i) {
    rows.push_back(
        {{"theta", locus.theta[i]}, {"re_mu", locus.mu[i].real()}, {"im_mu", locus.mu[i].imag()}});
  }
  json doc{{"metadata", metadata_json(meta.method, meta.ell, meta.problem)}, {"rows", rows}};
  out << doc.dump(2) << '\n';
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << 't';
  const auto dim = traj.states.empty() ? 0 : traj.states[0].size();
  for (Eigen::Index i = 0; i < dim; ++i) out << ",y" << (i + 1);
  out << '\n';
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    out << format_real(traj.time(static_cast<long>(n)));
    for (Eigen::Index i = 0; i < dim; ++i) out << ',' << format_real(traj.states[n][i]);
    out << '\n';
  }
}

void write_trajectory_json(std::ostream& out, const Trajectory& traj, const ReportMetadata& meta) {
  json t = json::array();
  json y = json::array();
  for (std::size_t n = 0; n < traj.states.size(); ++n) {
    t.push_back(traj.time(static_cast<long>(n)));
    y.push_back(std::vector<double>(traj.states[n].data(),
                                    traj.states[n].data() + traj.states[n].size()));
  }
  json doc{{"metadata", metadata_json(meta.method, meta.ell, meta.problem)},
           {"h", traj.h},
           {"f_evals", traj.f_eval_count},
           {"t", t},
           {"y", y}};
  out << doc.dump(2) << '\n';
}

}  // namespace lmm
