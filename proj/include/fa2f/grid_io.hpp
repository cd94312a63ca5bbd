#pragma once
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "fa2f/lattice.hpp"

namespace fa2f {

// Text grid: header line, then rows with x increasing left to right and
// y increasing downwards; 3d layers in increasing z separated by a blank line.
// Immune '#', infected 'i', healthy 'h'. A nonzero lower corner is appended
// to the header as lower=x,y[,z].
inline std::string write_grid(const Configuration& cfg) {
  const Box& b = cfg.box();
  std::ostringstream os;
  os << "d=" << b.d << " dims=" << b.dims[0] << "x" << b.dims[1];
  if (b.d == 3) os << "x" << b.dims[2];
  os << " boundary=" << boundary_name(b.boundary);
  if (b.lower != Site{}) {
    os << " lower=" << b.lower.x << "," << b.lower.y;
    if (b.d == 3) os << "," << b.lower.z;
  }
  os << "\n";
  for (int z = 0; z < b.dims[2]; ++z) {
    if (z > 0) os << "\n";
    for (int y = 0; y < b.dims[1]; ++y) {
      for (int x = 0; x < b.dims[0]; ++x) {
        std::size_t k = b.index(b.lower + Site{x, y, z});
        os << (cfg.env().immune_at(k) ? '#' : (cfg.infected_at(k) ? 'i' : 'h'));
      }
      os << "\n";
    }
  }
  return os.str();
}

inline std::string write_grid(const Environment& env) { return write_grid(Configuration(env)); }

inline Configuration parse_grid(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw std::invalid_argument("empty grid text");
  Box b;
  bool have_d = false, have_dims = false;
  std::istringstream hs(header);
  std::string tok;
  while (hs >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("bad header token: " + tok);
    std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "d") {
      b.d = std::stoi(val);
      have_d = true;
    } else if (key == "dims") {
      std::array<int, 3> dd{1, 1, 1};
      std::size_t pos = 0;
      for (int a = 0; a < 3 && pos <= val.size(); ++a) {
        auto nx = val.find('x', pos);
        dd[a] = std::stoi(val.substr(pos, nx - pos));
        if (nx == std::string::npos) break;
        pos = nx + 1;
      }
      b.dims = dd;
      have_dims = true;
    } else if (key == "boundary") {
      b.boundary = parse_boundary(val);
    } else if (key == "lower") {
      std::istringstream ls(val);
      std::string part;
      int a = 0;
      while (std::getline(ls, part, ',') && a < 3) b.lower[a++] = std::stoi(part);
    } else {
      throw std::invalid_argument("unknown header key: " + key);
    }
  }
  if (!have_d || !have_dims) throw std::invalid_argument("header needs d= and dims=");
  if (b.d == 2) b.dims[2] = 1;
  b.validate();

  std::vector<std::uint8_t> lab(b.size(), 0);
  std::vector<std::size_t> inf;
  std::string line;
  int y = 0, z = 0;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (y != 0) {
        if (y != b.dims[1]) throw std::invalid_argument("layer has wrong row count");
        ++z;
        y = 0;
      }
      continue;
    }
    if (z >= b.dims[2] || y >= b.dims[1]) throw std::invalid_argument("too many rows in grid");
    if (static_cast<int>(line.size()) != b.dims[0]) throw std::invalid_argument("row has wrong length");
    for (int x = 0; x < b.dims[0]; ++x) {
      std::size_t k = b.index(b.lower + Site{x, y, z});
      switch (line[x]) {
        case '#': lab[k] = 1; break;
        case 'i': inf.push_back(k); break;
        case 'h': break;
        default: throw std::invalid_argument(std::string("bad grid character '") + line[x] + "'");
      }
    }
    ++y;
  }
  if (!(z == b.dims[2] - 1 && y == b.dims[1]) && !(z == b.dims[2] && y == 0))
    throw std::invalid_argument("grid is truncated");
  Configuration cfg(Environment(b, std::move(lab)));
  for (auto k : inf) cfg.put(k, true);
  return cfg;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

}  // namespace fa2f
