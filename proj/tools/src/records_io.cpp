#include "minkflow_app/records_io.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace minkflow::app {

namespace {

using Field = double SnapshotRecord::*;

constexpr std::array<std::pair<const char*, Field>, 26> kScalarFields{{
    {"t", &SnapshotRecord::t},
    {"q_length", &SnapshotRecord::q_length},
    {"area", &SnapshotRecord::area},
    {"iso_ratio", &SnapshotRecord::iso_ratio},
    {"k2_ds", &SnapshotRecord::k2_ds},
    {"r_sin", &SnapshotRecord::r_sin},
    {"r_cos", &SnapshotRecord::r_cos},
    {"j", &SnapshotRecord::j},
    {"w", &SnapshotRecord::w},
    {"k_min", &SnapshotRecord::k_min},
    {"k_max", &SnapshotRecord::k_max},
    {"k_star", &SnapshotRecord::k_star},
    {"f_value", &SnapshotRecord::f_value},
    {"hausdorff", &SnapshotRecord::hausdorff},
    {"r_in", &SnapshotRecord::r_in},
    {"r_out", &SnapshotRecord::r_out},
    {"bonnesen_rin", &SnapshotRecord::bonnesen_rin},
    {"bonnesen_rout", &SnapshotRecord::bonnesen_rout},
    {"isoperimetric_slack", &SnapshotRecord::isoperimetric_slack},
    {"gage_slack", &SnapshotRecord::gage_slack},
    {"refined_gage_slack", &SnapshotRecord::refined_gage_slack},
    {"median_bound_slack", &SnapshotRecord::median_bound_slack},
    {"gage_product", &SnapshotRecord::gage_product},
    {"base_x", nullptr},
    {"base_y", nullptr},
    {"n", nullptr},
}};

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) return true;
  }
  return false;
}

long parse_long(std::string_view s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  }
  return v;
}

template <class Row>
std::vector<Row> read_columns(std::istream& in, std::string_view expected_header,
                              Row (*make)(const std::vector<std::string_view>&)) {
  std::string line;
  if (!next_line(in, line)) throw std::runtime_error("empty file");
  if (line != expected_header) {
    throw std::runtime_error("unexpected header '" + line + "', wanted '" + std::string(expected_header) + "'");
  }
  std::vector<Row> out;
  while (next_line(in, line)) {
    const auto cols = split(line);
    if (cols.size() != 3) throw std::runtime_error("expected 3 columns, got " + std::to_string(cols.size()));
    out.push_back(make(cols));
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("cannot format double");
  return {buf.data(), ptr};
}

double parse_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("not a number: '" + std::string(s) + "'");
  }
  return v;
}

std::string snapshot_header(int n) {
  std::string h = "schema,step";
  for (const auto& [name, field] : kScalarFields) (h += ',') += name;
  for (int i = 0; i < n; ++i) h += ",k" + std::to_string(i);
  return h;
}

std::string snapshot_row(const SnapshotRecord& r) {
  std::string row(kSnapshotSchema);
  row += ',' + std::to_string(r.step);
  for (const auto& [name, field] : kScalarFields) {
    row += ',';
    if (field) {
      row += format_double(r.*field);
    } else if (std::string_view(name) == "base_x") {
      row += format_double(r.base.x);
    } else if (std::string_view(name) == "base_y") {
      row += format_double(r.base.y);
    } else {
      row += std::to_string(r.k.size());
    }
  }
  for (double v : r.k) (row += ',') += format_double(v);
  return row;
}

SnapshotCsvWriter::SnapshotCsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
}

void SnapshotCsvWriter::write(const SnapshotRecord& r) {
  if (!header_written_) {
    out_ << snapshot_header(static_cast<int>(r.k.size())) << '\n';
    header_written_ = true;
  }
  out_ << snapshot_row(r) << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write to snapshot file failed");
}

void write_snapshots_csv(std::ostream& out, std::span<const SnapshotRecord> records) {
  if (records.empty()) return;
  out << snapshot_header(static_cast<int>(records.front().k.size())) << '\n';
  for (const auto& r : records) out << snapshot_row(r) << '\n';
}

std::vector<SnapshotRecord> read_snapshots_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::runtime_error("empty snapshot file");
  const auto head = split(line);
  const std::size_t fixed = 2 + kScalarFields.size();
  if (head.size() < fixed) throw std::runtime_error("snapshot header too short");
  const int n = static_cast<int>(head.size() - fixed);
  if (line != snapshot_header(n)) throw std::runtime_error("snapshot header does not match the schema");

  std::vector<SnapshotRecord> out;
  while (next_line(in, line)) {
    const auto cols = split(line);
    if (cols.size() != head.size()) {
      throw std::runtime_error("snapshot row has " + std::to_string(cols.size()) + " columns, header has " +
                               std::to_string(head.size()));
    }
    if (cols[0] != kSnapshotSchema) throw std::runtime_error("unknown schema '" + std::string(cols[0]) + "'");
    SnapshotRecord r;
    r.step = parse_long(cols[1]);
    for (std::size_t f = 0; f < kScalarFields.size(); ++f) {
      const auto& [name, field] = kScalarFields[f];
      const auto col = cols[2 + f];
      if (field) {
        r.*field = parse_double(col);
      } else if (std::string_view(name) == "base_x") {
        r.base.x = parse_double(col);
      } else if (std::string_view(name) == "base_y") {
        r.base.y = parse_double(col);
      } else if (parse_long(col) != n) {
        throw std::runtime_error("snapshot node count does not match the header");
      }
    }
    r.k.resize(n);
    for (int i = 0; i < n; ++i) r.k[i] = parse_double(cols[fixed + i]);
    out.push_back(std::move(r));
  }
  return out;
}

void write_frame_csv(std::ostream& out, std::span<const FramePoint> points) {
  out << "theta,x,y\n";
  for (const auto& p : points) {
    out << format_double(p.theta) << ',' << format_double(p.x) << ',' << format_double(p.y) << '\n';
  }
}

std::vector<FramePoint> read_frame_csv(std::istream& in) {
  return read_columns<FramePoint>(in, "theta,x,y", [](const std::vector<std::string_view>& c) {
    return FramePoint{parse_double(c[0]), parse_double(c[1]), parse_double(c[2])};
  });
}

void write_curve_csv(std::ostream& out, std::span<const CurveSample> samples) {
  out << "theta,k\n";
  for (const auto& s : samples) out << format_double(s.theta) << ',' << format_double(s.k) << '\n';
}

std::vector<CurveSample> read_curve_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw std::runtime_error("empty curve file");
  if (line != "theta,k") throw std::runtime_error("curve file header must be 'theta,k', got '" + line + "'");
  std::vector<CurveSample> out;
  while (next_line(in, line)) {
    const auto cols = split(line);
    if (cols.size() != 2) throw std::runtime_error("curve rows need 2 columns, got " + std::to_string(cols.size()));
    out.push_back({parse_double(cols[0]), parse_double(cols[1])});
  }
  return out;
}

}  // namespace minkflow::app
