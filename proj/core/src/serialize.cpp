#include "lapsewick/serialize.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace lapsewick {

namespace {

using json = nlohmann::ordered_json;

json header_of(const Grid& g, bool complex_entries) {
  json h;
  h["dim"] = g.dim();
  h["nt"] = g.nt();
  h["nx"] = g.nx();
  h["extent_t"] = g.extent_t();
  h["extent_x"] = g.extent_x();
  h["complex"] = complex_entries;
  return h;
}

Grid grid_of(const json& h) {
  return Grid(h.at("dim").get<int>(), h.at("nt").get<int>(),
              h.at("nx").get<int>(), h.at("extent_t").get<double>(),
              h.at("extent_x").get<double>());
}

void format_value(std::ostream& os, double v) { os << v; }
void format_value(std::ostream& os, const cplx& v) {
  os << '"' << v.real() << ',' << v.imag() << '"';
}

template <class T>
void write_impl(const std::string& path, const Field<T>& f, bool cx) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open for writing: " + path);
  os.precision(17);
  os << header_of(f.grid, cx).dump() << '\n';
  const std::size_t row = static_cast<std::size_t>(f.grid.nx());
  for (std::size_t i = 0; i < f.size(); ++i) {
    format_value(os, f[i]);
    os << ((i % row == row - 1) ? '\n' : ',');
  }
  if (!os) throw std::runtime_error("write failed: " + path);
}

cplx parse_cell(const std::string& cell) {
  std::string s = cell;
  if (!s.empty() && s.front() == '"') {
    s = s.substr(1, s.size() - 2);
    auto comma = s.find(',');
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  }
  return {std::stod(s), 0.0};
}

Field<cplx> read_impl(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("missing header: " + path);
  Grid g = grid_of(json::parse(line));
  Field<cplx> f(g);
  std::size_t i = 0;
  while (std::getline(is, line)) {
    bool quoted = false;
    std::string acc;
    // Split on commas outside quotes.
    for (char c : line) {
      if (c == '"') quoted = !quoted;
      if (c == ',' && !quoted) {
        if (i >= f.size()) throw std::runtime_error("too many cells: " + path);
        f[i++] = parse_cell(acc);
        acc.clear();
      } else {
        acc += c;
      }
    }
    if (!acc.empty()) {
      if (i >= f.size()) throw std::runtime_error("too many cells: " + path);
      f[i++] = parse_cell(acc);
    }
  }
  if (i != f.size()) throw std::runtime_error("cell count mismatch: " + path);
  return f;
}

}  // namespace

void write_field(const std::string& path, const Field<double>& f) {
  write_impl(path, f, false);
}
void write_field(const std::string& path, const Field<cplx>& f) {
  write_impl(path, f, true);
}

Field<cplx> read_complex_field(const std::string& path) {
  return read_impl(path);
}

Field<double> read_real_field(const std::string& path) {
  Field<cplx> c = read_impl(path);
  Field<double> f(c.grid);
  for (std::size_t i = 0; i < c.size(); ++i) f[i] = c[i].real();
  return f;
}

}  // namespace lapsewick
