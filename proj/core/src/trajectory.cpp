#include "samlab/trajectory.h"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "samlab/errors.h"

namespace samlab {

std::string format_double_17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

double parse_field(const std::string& field, const std::string& path, long line) {
  double out = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  auto res = std::from_chars(begin, end, out);
  if (res.ec != std::errc() || res.ptr != end) {
    std::ostringstream os;
    os << path << ":" << line << ": cannot parse number '" << field << "'";
    throw ParseError(os.str());
  }
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

void save_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output file: " + path);
  int d = traj.iterates.empty() ? 1 : traj.iterates.front().dim();
  os << "t";
  for (int i = 0; i < d; ++i) os << ",x" << i;
  os << ",f,grad_norm\n";
  for (size_t t = 0; t < traj.iterates.size(); ++t) {
    os << t;
    for (int i = 0; i < d; ++i) os << ',' << format_double_17(traj.iterates[t][i]);
    os << ',' << format_double_17(traj.f_values[t]) << ','
       << format_double_17(traj.grad_norms[t]) << '\n';
  }
}

void save_x_vs_epoch_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot open output file: " + path);
  os << "t,x\n";
  for (size_t t = 0; t < traj.iterates.size(); ++t)
    os << t << ',' << format_double_17(traj.iterates[t][0]) << '\n';
}

Trajectory load_trajectory_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError(path + ": cannot open file");
  std::string line;
  long line_no = 0;

  if (!std::getline(is, line)) throw ParseError(path + ":1: missing header row");
  ++line_no;
  auto header = split_csv(line);
  if (header.size() < 4 || header.front() != "t" || header[header.size() - 2] != "f" ||
      header.back() != "grad_norm") {
    throw ParseError(path + ":1: header does not match schema t,x0..x{d-1},f,grad_norm");
  }
  int d = static_cast<int>(header.size()) - 3;
  if (d < 1 || d > Vec::kMaxDim) throw ParseError(path + ":1: unsupported dimension in header");
  for (int i = 0; i < d; ++i) {
    if (header[static_cast<size_t>(i) + 1] != "x" + std::to_string(i))
      throw ParseError(path + ":1: header does not match schema t,x0..x{d-1},f,grad_norm");
  }

  Trajectory traj;
  long expected_t = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() != header.size()) {
      std::ostringstream os;
      os << path << ":" << line_no << ": expected " << header.size() << " fields, got "
         << fields.size();
      throw ParseError(os.str());
    }
    long t = static_cast<long>(parse_field(fields[0], path, line_no));
    if (t != expected_t) {
      std::ostringstream os;
      os << path << ":" << line_no << ": expected step index " << expected_t << ", got " << t;
      throw ParseError(os.str());
    }
    ++expected_t;
    Vec x = Vec::zeros(d);
    for (int i = 0; i < d; ++i) x[i] = parse_field(fields[static_cast<size_t>(i) + 1], path, line_no);
    traj.iterates.push_back(x);
    traj.f_values.push_back(parse_field(fields[fields.size() - 2], path, line_no));
    traj.grad_norms.push_back(parse_field(fields.back(), path, line_no));
  }
  if (traj.iterates.empty()) throw ParseError(path + ": no data rows");
  return traj;
}

}  // namespace samlab
