#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cm/atomic.hpp"
#include "cm/grid.hpp"
#include "cm/tail.hpp"

namespace cm {

namespace detail {

// Shortest decimal form that parses back to the same double.
inline std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s) {
  double x = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error("parse error: bad floating-point field '" + std::string(s) + "'");
  return x;
}

inline long parse_long(std::string_view s) {
  long x = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error("parse error: bad integer field '" + std::string(s) + "'");
  return x;
}

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = line.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(line.substr(pos));
      break;
    }
    out.push_back(line.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// AtomicState: CSV with a dimension record and one row per atom
//   dim=<d>
//   x1,...,xd,weight,re,im
//   <coords...>,<weight>,<re>,<im>
// Floats print in shortest round-trip form, so write/read is bit-exact.
// ---------------------------------------------------------------------------

inline std::string to_csv(const AtomicState& u) {
  std::ostringstream out;
  out << "dim=" << u.base.dimension << "\n";
  for (int a = 1; a <= u.base.dimension; ++a) out << "x" << a << ",";
  out << "weight,re,im\n";
  for (std::size_t i = 0; i < u.base.atom_count(); ++i) {
    for (double c : u.base.points[i]) out << detail::format_double(c) << ",";
    out << detail::format_double(u.base.weights[i]) << ","
        << detail::format_double(u.amps[i].real()) << ","
        << detail::format_double(u.amps[i].imag()) << "\n";
  }
  return out.str();
}

inline AtomicState atomic_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("dim=", 0) != 0)
    throw Error("parse error: expected 'dim=<d>' header");
  const int dim = static_cast<int>(detail::parse_long(std::string_view(line).substr(4)));
  if (!std::getline(in, line)) throw Error("parse error: missing column header");
  AtomicState u = zero_atomic(dim);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split(line, ',');
    if (static_cast<int>(fields.size()) != dim + 3)
      throw Error("parse error: wrong column count in atom row");
    Point p(dim);
    for (int a = 0; a < dim; ++a) p[a] = detail::parse_double(fields[a]);
    u.base.points.push_back(std::move(p));
    u.base.weights.push_back(detail::parse_double(fields[dim]));
    u.amps.emplace_back(detail::parse_double(fields[dim + 1]),
                        detail::parse_double(fields[dim + 2]));
  }
  u.validate();
  return u;
}

// ---------------------------------------------------------------------------
// GridState: header lines (dimension, one L,n pair per axis), then row-major
// complex samples as re,im rows. Same shortest-float convention.
// ---------------------------------------------------------------------------

inline std::string to_csv(const GridState& s) {
  std::ostringstream out;
  out << "dim=" << s.grid.dimension() << "\n";
  for (const Axis& a : s.grid.axes)
    out << "L=" << detail::format_double(a.length) << ",n=" << a.count << "\n";
  out << "re,im\n";
  for (const Complex& c : s.amp)
    out << detail::format_double(c.real()) << "," << detail::format_double(c.imag())
        << "\n";
  return out.str();
}

inline GridState grid_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("dim=", 0) != 0)
    throw Error("parse error: expected 'dim=<d>' header");
  const int dim = static_cast<int>(detail::parse_long(std::string_view(line).substr(4)));
  Grid g;
  for (int a = 0; a < dim; ++a) {
    if (!std::getline(in, line)) throw Error("parse error: missing axis header");
    const auto fields = detail::split(line, ',');
    if (fields.size() != 2 || fields[0].rfind("L=", 0) != 0 || fields[1].rfind("n=", 0) != 0)
      throw Error("parse error: bad axis header");
    g.axes.push_back(Axis{detail::parse_double(fields[0].substr(2)),
                          static_cast<int>(detail::parse_long(fields[1].substr(2)))});
  }
  if (!std::getline(in, line)) throw Error("parse error: missing column header");
  GridState s{g, {}};
  s.amp.reserve(g.size());
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split(line, ',');
    if (fields.size() != 2) throw Error("parse error: bad sample row");
    s.amp.emplace_back(detail::parse_double(fields[0]), detail::parse_double(fields[1]));
  }
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Product tails: versioned JSON with profile name, explicit prefix and the
// eventually-constant rule. Keys serialize sorted, so the form is canonical.
// ---------------------------------------------------------------------------

inline std::string profile_name(Profile p) {
  switch (p) {
    case Profile::Bump01:
      return "bump01";
  }
  throw Error("unknown profile");
}

inline Profile profile_from_name(const std::string& name) {
  if (name == "bump01") return Profile::Bump01;
  throw Error("unknown profile name '" + name + "'");
}

inline std::string law_name(ScaleLaw::Kind k) {
  return k == ScaleLaw::Kind::Power ? "power" : "constant";
}

inline nlohmann::json tail_to_json(const std::vector<TailFactor>& prefix,
                                   const TailRule& rule) {
  nlohmann::json j;
  j["version"] = 1;
  j["profile"] = profile_name(rule.profile);
  j["prefix"] = nlohmann::json::array();
  for (const TailFactor& f : prefix)
    j["prefix"].push_back({{"L", f.scale}, {"offset", f.offset}});
  j["rule"] = {{"law", law_name(rule.law.kind)},
               {"parameter", rule.law.parameter},
               {"offset", rule.offset},
               {"first_index", rule.first_index}};
  return j;
}

inline std::pair<std::vector<TailFactor>, TailRule> tail_from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != 1) throw Error("unsupported tail format version");
  const Profile profile = profile_from_name(j.at("profile").get<std::string>());
  std::vector<TailFactor> prefix;
  for (const auto& f : j.at("prefix"))
    prefix.push_back(TailFactor{profile, f.at("L").get<double>(), f.at("offset").get<long>()});
  const auto& r = j.at("rule");
  ScaleLaw law{r.at("law").get<std::string>() == "power" ? ScaleLaw::Kind::Power
                                                         : ScaleLaw::Kind::Constant,
               r.at("parameter").get<double>()};
  TailRule rule{profile, law, r.at("offset").get<long>(), r.at("first_index").get<long>()};
  return {std::move(prefix), rule};
}

inline void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << body;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

}  // namespace cm
