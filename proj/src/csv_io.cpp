#include "epgram/csv_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace epgram {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    std::size_t b = f.find_first_not_of(" \t");
    std::size_t e = f.find_last_not_of(" \t");
    f = (b == std::string::npos) ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

bool parse_double(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(text.c_str(), &end);
  return errno == 0 && end == text.c_str() + text.size();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot open '" + tmp + "' for writing");
    out << content;
    if (!out) throw InputError("failed writing '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    throw InputError("failed to move '" + tmp + "' to '" + path + "'");
  }
}

TimeSeries read_series_csv(const std::string& path, const std::string& column) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  std::vector<double> values;
  int col_index = column.empty() ? 0 : -1;
  bool saw_data = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (fields.size() == 1 && fields[0].empty()) continue;

    double v;
    bool numeric_first = parse_double(fields[0], v);
    if (!saw_data && !numeric_first) {
      // Header row: resolve the requested column.
      if (!column.empty()) {
        col_index = -1;
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (fields[i] == column) col_index = static_cast<int>(i);
        }
        if (col_index < 0) {
          throw InputError("line " + std::to_string(line_no) + ": column '" +
                           column + "' not found in header");
        }
      }
      saw_data = true;
      continue;
    }
    saw_data = true;
    if (col_index < 0) {
      throw InputError("line " + std::to_string(line_no) +
                       ": --column given but the file has no header row");
    }
    if (static_cast<std::size_t>(col_index) >= fields.size()) {
      throw InputError("line " + std::to_string(line_no) +
                       ": missing column " + std::to_string(col_index + 1));
    }
    double value;
    if (!parse_double(fields[col_index], value)) {
      throw InputError("line " + std::to_string(line_no) +
                       ": cannot parse value '" + fields[col_index] + "'");
    }
    if (!std::isfinite(value)) {
      throw InputError("line " + std::to_string(line_no) +
                       ": non-finite value '" + fields[col_index] + "'");
    }
    values.push_back(value);
  }
  if (values.empty()) throw InputError("'" + path + "' contains no data rows");
  return TimeSeries(std::move(values));
}

void write_series_csv(const std::string& path, const TimeSeries& y) {
  std::string out = "value\n";
  for (double v : y.values()) {
    out += fmt17(v);
    out += '\n';
  }
  write_text_file(path, out);
}

std::string matrix_to_csv(const PeriodogramMatrix& pm) {
  std::string out;
  out += "# n=" + std::to_string(pm.grid.n) + "\n";
  out += std::string("# normalized=") + (pm.normalized ? "true" : "false") + "\n";
  out += "alpha";
  for (std::size_t f = 0; f < pm.freq_count(); ++f) {
    out += ',';
    out += fmt17(static_cast<double>(pm.grid.indices[f]) / pm.grid.n);
  }
  out += '\n';
  for (std::size_t li = 0; li < pm.level_count(); ++li) {
    out += fmt17(pm.levels[li]);
    for (std::size_t f = 0; f < pm.freq_count(); ++f) {
      out += ',';
      out += fmt17(pm.rows[li][f]);
    }
    out += '\n';
  }
  return out;
}

void write_matrix_csv(const std::string& path, const PeriodogramMatrix& pm) {
  write_text_file(path, matrix_to_csv(pm));
}

PeriodogramMatrix matrix_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  int n = 0;
  bool normalized = false;
  bool header_seen = false;
  std::size_t freq_count = 0;
  PeriodogramMatrix pm;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eq = line.find("n=");
      if (eq != std::string::npos && line.find("normalized") == std::string::npos) {
        n = std::atoi(line.c_str() + eq + 2);
      }
      if (line.find("normalized=true") != std::string::npos) normalized = true;
      continue;
    }
    auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() < 2 || fields[0] != "alpha") {
        throw InputError("line " + std::to_string(line_no) +
                         ": expected matrix header 'alpha,f1,...'");
      }
      freq_count = fields.size() - 1;
      if (n == 0) {
        double f1;
        if (!parse_double(fields[1], f1) || f1 <= 0.0) {
          throw InputError("line " + std::to_string(line_no) +
                           ": bad first frequency");
        }
        n = static_cast<int>(std::lround(1.0 / f1));
      }
      pm.grid = FrequencyGrid::fourier(n);
      if (pm.grid.size() != freq_count) {
        throw InputError("frequency count does not match n=" + std::to_string(n));
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != freq_count + 1) {
      throw InputError("line " + std::to_string(line_no) +
                       ": expected " + std::to_string(freq_count + 1) +
                       " fields, got " + std::to_string(fields.size()));
    }
    double level;
    if (!parse_double(fields[0], level)) {
      throw InputError("line " + std::to_string(line_no) + ": bad level '" +
                       fields[0] + "'");
    }
    std::vector<double> row(freq_count);
    for (std::size_t f = 0; f < freq_count; ++f) {
      if (!parse_double(fields[f + 1], row[f])) {
        throw InputError("line " + std::to_string(line_no) + ": bad value '" +
                         fields[f + 1] + "'");
      }
    }
    pm.levels.push_back(level);
    pm.rows.push_back(std::move(row));
  }
  if (!header_seen || pm.rows.empty()) {
    throw InputError("matrix CSV contains no data");
  }
  pm.normalized = normalized;
  pm.converged.assign(pm.level_count(),
                      std::vector<bool>(pm.freq_count(), true));
  return pm;
}

PeriodogramMatrix read_matrix_csv(const std::string& path) {
  return matrix_from_csv(read_file(path));
}

}  // namespace epgram
