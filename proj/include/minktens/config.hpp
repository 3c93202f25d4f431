#pragma once

#include "minktens/bodies.hpp"
#include "minktens/common.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace minktens {

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline std::vector<std::string> splitWs(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

// Accepts plain decimals and pi expressions of the form [coef]pi[/den],
// e.g. "0.5", "pi", "-pi/2", "3pi/16".
inline Real parseNumber(const std::string& raw) {
  const std::string s = detail::trim(raw);
  const std::size_t p = s.find("pi");
  if (p == std::string::npos) {
    std::size_t used = 0;
    const Real v = std::stod(s, &used);
    if (used != s.size()) throw ConfigError("bad number: '" + s + "'");
    return v;
  }
  Real coef = 1.0;
  const std::string head = s.substr(0, p);
  if (head == "-") coef = -1.0;
  else if (!head.empty()) coef = std::stod(head);
  Real den = 1.0;
  std::string tail = s.substr(p + 2);
  if (!tail.empty()) {
    if (tail[0] != '/') throw ConfigError("bad number: '" + s + "'");
    den = std::stod(tail.substr(1));
  }
  return coef * M_PI / den;
}

inline std::map<std::string, std::string> parseKeyValueFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("expected key = value: '" + line + "'");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string val = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key in config line: '" + line + "'");
    if (!kv.emplace(key, val).second) throw ConfigError("duplicate key: " + key);
  }
  return kv;
}

namespace detail {

inline Vec parseVec(const std::string& s, const char* what) {
  const auto toks = splitWs(s);
  if (toks.size() < 1 || toks.size() > 3)
    throw ConfigError(std::string(what) + ": expected 1-3 numbers");
  Vec v(static_cast<Eigen::Index>(toks.size()));
  for (std::size_t i = 0; i < toks.size(); ++i) v[static_cast<Eigen::Index>(i)] = parseNumber(toks[i]);
  return v;
}

inline std::vector<Vec> parsePointList(const std::string& s, int dim) {
  std::vector<Vec> pts;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto toks = splitWs(part);
    if (static_cast<int>(toks.size()) != dim) throw ConfigError("point with wrong dimension: '" + part + "'");
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v[i] = parseNumber(toks[static_cast<std::size_t>(i)]);
    pts.push_back(std::move(v));
  }
  return pts;
}

// "e1 3pi/16 e2 5pi/16" -> product of axis rotations, applied left to right
inline Mat parseRotation(const std::string& s, int dim) {
  const auto toks = splitWs(s);
  if (toks.size() % 2 != 0) throw ConfigError("rotation: expected axis/angle pairs");
  Mat r = Mat::Identity(dim, dim);
  for (std::size_t i = 0; i < toks.size(); i += 2) {
    const Real angle = parseNumber(toks[i + 1]);
    if (dim == 2) {
      if (toks[i] != "e3" && toks[i] != "z")
        throw ConfigError("rotation: planar rotations use axis e3");
      r = rotation2(angle) * r;
    } else {
      int axis = -1;
      if (toks[i] == "e1" || toks[i] == "x") axis = 0;
      else if (toks[i] == "e2" || toks[i] == "y") axis = 1;
      else if (toks[i] == "e3" || toks[i] == "z") axis = 2;
      else throw ConfigError("rotation: unknown axis '" + toks[i] + "'");
      r = rotationAboutAxis3(axis, angle) * r;
    }
  }
  return r;
}

}  // namespace detail

// Body description format (key = value per line, '#' comments):
//   kind     = ball | ellipsoid | polygon | box | segment
//   center   = x y [z]            (ball, ellipsoid)
//   radius   = r                  (ball)
//   semi_axes = a1 a2 [a3]        (ellipsoid)
//   rotation = e1 3pi/16 e2 5pi/16  (ellipsoid, optional; applied left to right)
//   vertices = x1 y1 ; x2 y2 ; ...  (polygon, counterclockwise)
//   min/max  = x y z              (box)
//   endpoints = x1 y1 [z1] ; x2 y2 [z2]   (segment)
inline ConvexBody bodyFromKeyValues(const std::map<std::string, std::string>& kv) {
  auto need = [&](const char* key) -> const std::string& {
    const auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(std::string("body config: missing key '") + key + "'");
    return it->second;
  };
  auto allowOnly = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : kv) {
      bool ok = false;
      for (const char* a : keys)
        if (k == a) ok = true;
      if (!ok) throw ConfigError("body config: unknown key '" + k + "'");
    }
  };
  const std::string kind = need("kind");
  if (kind == "ball") {
    allowOnly({"kind", "center", "radius"});
    return ConvexBody(Ball{detail::parseVec(need("center"), "center"), parseNumber(need("radius"))});
  }
  if (kind == "ellipsoid") {
    allowOnly({"kind", "center", "semi_axes", "rotation"});
    const Vec center = detail::parseVec(need("center"), "center");
    const Vec axes = detail::parseVec(need("semi_axes"), "semi_axes");
    if (axes.size() != center.size()) throw ConfigError("body config: semi_axes/center dimension mismatch");
    const int dim = static_cast<int>(center.size());
    Mat rot = Mat::Identity(dim, dim);
    if (const auto it = kv.find("rotation"); it != kv.end()) rot = detail::parseRotation(it->second, dim);
    return ConvexBody(Ellipsoid{center, axes, rot});
  }
  if (kind == "polygon") {
    allowOnly({"kind", "vertices"});
    return ConvexBody(Polygon{detail::parsePointList(need("vertices"), 2)});
  }
  if (kind == "box") {
    allowOnly({"kind", "min", "max"});
    return makeBox3(detail::parseVec(need("min"), "min"), detail::parseVec(need("max"), "max"));
  }
  if (kind == "segment") {
    allowOnly({"kind", "endpoints"});
    const auto pts = detail::parsePointList(need("endpoints"), -1 /*unused*/);
    throw ConfigError("body config: segment endpoints need explicit dimension handling");
  }
  throw ConfigError("body config: unknown kind '" + kind + "'");
}

inline ConvexBody loadBody(const std::string& path) {
  auto kv = parseKeyValueFile(path);
  if (kv.count("kind") && kv.at("kind") == "segment") {
    // endpoints share one dimension; parse here where we can look ahead
    const auto it = kv.find("endpoints");
    if (it == kv.end()) throw ConfigError("body config: missing key 'endpoints'");
    for (const auto& [k, v] : kv)
      if (k != "kind" && k != "endpoints") throw ConfigError("body config: unknown key '" + k + "'");
    std::stringstream ss(it->second);
    std::string part;
    std::vector<Vec> pts;
    while (std::getline(ss, part, ';')) {
      part = detail::trim(part);
      if (!part.empty()) pts.push_back(detail::parseVec(part, "endpoints"));
    }
    if (pts.size() != 2 || pts[0].size() != pts[1].size())
      throw ConfigError("body config: segment needs two endpoints of equal dimension");
    return ConvexBody(Segment{pts[0], pts[1]});
  }
  return bodyFromKeyValues(kv);
}

}  // namespace minktens
