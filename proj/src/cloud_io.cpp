#include "srgkit/cloud_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace srgkit {

namespace {

constexpr const char* kVersionLine = "# srg-cloud v1";
constexpr const char* kColumnsLine = "re,im,gain,phase_rad,is_infinity";

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

[[noreturn]] void bad_line(std::size_t line_no, const std::string& what) {
  throw std::runtime_error("cloud parse error at line " +
                           std::to_string(line_no) + ": " + what);
}

double parse_double(const std::string& field, std::size_t line_no) {
  if (field == "inf") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    bad_line(line_no, "bad number '" + field + "'");
  return value;
}

std::string header_value(const std::string& line, const std::string& key,
                         std::size_t line_no) {
  std::string prefix = "# " + key + ": ";
  if (line.rfind(prefix, 0) != 0)
    bad_line(line_no, "expected header '" + prefix + "...'");
  return line.substr(prefix.size());
}

}  // namespace

std::string serialize_cloud(const SrgCloud& cloud) {
  std::string out;
  out += kVersionLine;
  out += '\n';
  out += "# spec: ";
  out += pairing_name(cloud.spec);
  out += '\n';
  out += "# side: ";
  out += side_name(cloud.side);
  out += '\n';
  out += "# sampler: " + cloud.meta.sampler_id + '\n';
  out += "# n: " + std::to_string(cloud.meta.n) + '\n';
  out += "# seed: " + std::to_string(cloud.meta.seed) + '\n';
  out += kColumnsLine;
  out += '\n';
  for (const SrgPoint& p : cloud.points) {
    if (p.is_infinity) {
      out += "inf,inf,inf,0,1\n";
    } else {
      out += fmt17(p.re()) + ',' + fmt17(p.im()) + ',' + fmt17(p.gain) + ',' +
             fmt17(p.phase) + ",0\n";
    }
  }
  return out;
}

SrgCloud parse_cloud(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() {
    if (!std::getline(in, line)) bad_line(line_no + 1, "unexpected end of file");
    ++line_no;
  };

  next_line();
  if (line != kVersionLine)
    bad_line(line_no, "unsupported format version '" + line + "'");

  SrgCloud cloud;
  next_line();
  {
    auto spec = parse_pairing(header_value(line, "spec", line_no));
    if (!spec) bad_line(line_no, "unknown spec");
    cloud.spec = *spec;
  }
  next_line();
  {
    auto side = parse_side(header_value(line, "side", line_no));
    if (!side) bad_line(line_no, "unknown side");
    cloud.side = *side;
  }
  next_line();
  cloud.meta.sampler_id = header_value(line, "sampler", line_no);
  next_line();
  cloud.meta.n = std::stoull(header_value(line, "n", line_no));
  next_line();
  cloud.meta.seed = std::stoull(header_value(line, "seed", line_no));
  next_line();
  if (line != kColumnsLine) bad_line(line_no, "expected column header");

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() != 5) bad_line(line_no, "expected 5 fields");
    SrgPoint p;
    p.sample_index = cloud.points.size();
    if (fields[4] == "1") {
      p.is_infinity = true;
      p.gain = std::numeric_limits<double>::infinity();
      p.phase = 0.0;
    } else if (fields[4] == "0") {
      p.gain = parse_double(fields[2], line_no);
      p.phase = parse_double(fields[3], line_no);
      // re/im are derived columns; check they belong to this point.
      double re = parse_double(fields[0], line_no);
      double im = parse_double(fields[1], line_no);
      if (std::abs(re - p.re()) > 1e-9 * (1.0 + p.gain) ||
          std::abs(im - p.im()) > 1e-9 * (1.0 + p.gain))
        bad_line(line_no, "re/im inconsistent with gain/phase");
    } else {
      bad_line(line_no, "is_infinity must be 0 or 1");
    }
    cloud.points.push_back(p);
  }
  return cloud;
}

void write_cloud(const std::string& path, const SrgCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << serialize_cloud(cloud);
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

SrgCloud read_cloud(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cloud(buf.str());
}

}  // namespace srgkit
