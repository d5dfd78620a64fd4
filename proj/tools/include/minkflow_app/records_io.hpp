#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "minkflow/flow_solver.hpp"

namespace minkflow::app {

inline constexpr std::string_view kSnapshotSchema = "minkflow.snapshot.v1";

/// Shortest text that parses back to exactly the same double.
std::string format_double(double v);
/// Throws std::invalid_argument unless the whole field is a number.
double parse_double(std::string_view s);

/// Header for a grid of n nodes: schema, step, t, scalar fields, k0..k{n-1}.
std::string snapshot_header(int n);
std::string snapshot_row(const SnapshotRecord& r);

/// Streams snapshot rows into a CSV file, writing the header with the first row.
class SnapshotCsvWriter {
 public:
  explicit SnapshotCsvWriter(const std::filesystem::path& path);
  void write(const SnapshotRecord& r);

 private:
  std::ofstream out_;
  bool header_written_{false};
};

void write_snapshots_csv(std::ostream& out, std::span<const SnapshotRecord> records);
/// Throws std::runtime_error on a schema or column mismatch.
std::vector<SnapshotRecord> read_snapshots_csv(std::istream& in);

struct FramePoint {
  double theta{0.0};
  double x{0.0};
  double y{0.0};
};

void write_frame_csv(std::ostream& out, std::span<const FramePoint> points);
std::vector<FramePoint> read_frame_csv(std::istream& in);

struct CurveSample {
  double theta{0.0};
  double k{0.0};
};

/// Two-column curvature file with header "theta,k".
void write_curve_csv(std::ostream& out, std::span<const CurveSample> samples);
std::vector<CurveSample> read_curve_csv(std::istream& in);

}  // namespace minkflow::app
