#include "whittaker/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace whittaker {

Shape parse_shape(const std::string& s) {
  if (s.empty() || s == "0") return Shape();
  auto x = s.find('x');
  if (x != std::string::npos) {
    long rows = std::stol(s.substr(0, x));
    long cols = std::stol(s.substr(x + 1));
    return rectangle(static_cast<int>(rows), cols);
  }
  return Shape(parse_longs(s));
}

std::vector<long> parse_longs(const std::string& s) {
  std::vector<long> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stol(tok));
  }
  return out;
}

std::vector<Rat> parse_rationals(const std::string& s) {
  std::vector<Rat> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(rat_from_string(tok));
  }
  return out;
}

std::string array_to_json(const PlaneArray& pi, const Shape& outer,
                          const Shape& inner) {
  nlohmann::ordered_json j;
  j["shape"] = outer.rows();
  if (!inner.empty()) j["inner"] = inner.rows();
  std::vector<long> vals;
  for (Cell c : pi.cells().cells()) vals.push_back(pi.at(c).value());
  j["values"] = vals;
  return j.dump();
}

PlaneArray array_from_json(const std::string& text, Shape* outer_out,
                           Shape* inner_out) {
  nlohmann::json j = nlohmann::json::parse(text);
  Shape outer(j.at("shape").get<std::vector<long>>());
  Shape inner;
  if (j.contains("inner")) inner = Shape(j.at("inner").get<std::vector<long>>());
  CellSet cells = inner.empty() ? CellSet::from_shape(outer)
                                : CellSet::skew(outer, inner);
  PlaneArray pi(cells, j.at("values").get<std::vector<long>>());
  if (outer_out) *outer_out = outer;
  if (inner_out) *inner_out = inner;
  return pi;
}

std::string array_to_csv(const PlaneArray& pi) {
  long width = 0, height = 0;
  for (Cell c : pi.cells().cells()) {
    width = std::max<long>(width, c.j);
    height = std::max<long>(height, c.i);
  }
  std::ostringstream os;
  for (long i = 1; i <= height; ++i) {
    for (long j = 1; j <= width; ++j) {
      if (j > 1) os << ",";
      Cell c{static_cast<int>(i), static_cast<int>(j)};
      if (pi.cells().contains(c)) os << pi.at(c).value();
    }
    os << "\n";
  }
  return os.str();
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string manifest_json(const std::string& command,
                          const std::map<std::string, std::string>& params,
                          std::uint64_t seed,
                          const std::vector<std::string>& outputs) {
  nlohmann::ordered_json j;
  j["tool"] = "whittaker";
  j["version"] = "0.1.0";
  j["command"] = command;
  j["seed"] = seed;
  nlohmann::ordered_json pj;
  for (const auto& [k, v] : params) pj[k] = v;
  j["params"] = pj;
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

}  // namespace whittaker
