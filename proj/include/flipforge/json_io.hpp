#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "approx.hpp"
#include "comb.hpp"
#include "convex.hpp"
#include "error.hpp"
#include "sequence.hpp"

namespace flipforge::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const ConvexTriangulation& t) {
  Json j;
  j["m"] = t.m();
  Json d = Json::array(), l = Json::array();
  for (auto& e : t.diagonals()) {
    d.push_back({e.first, e.second});
    l.push_back(t.label_of(e));
  }
  j["diagonals"] = d;
  j["labels"] = l;
  return j;
}

inline Json to_json(const FlipSequence& s) {
  Json j;
  j["mode"] = s.labelled ? "labelled" : "unlabelled";
  Json st = Json::array();
  if (s.labelled)
    for (int l : s.steps) st.push_back(l);
  else
    for (auto& d : s.diag_steps) st.push_back({d.first, d.second});
  j["steps"] = st;
  return j;
}

inline Json to_json(const SimFlipSequence& s) {
  Json j;
  j["mode"] = "labelled";
  Json r = Json::array();
  for (auto& round : s.rounds) r.push_back(round);
  j["rounds"] = r;
  return j;
}

inline Json to_json(const FixedEdgeReport& r) {
  Json j;
  Json f = Json::array();
  for (auto& d : r.fixed) f.push_back({d.first, d.second});
  j["fixed"] = f;
  Json p = Json::array();
  for (auto& pc : r.pieces) {
    Json x;
    x["vertices"] = pc.vertices;
    x["n_i"] = pc.n_i;
    p.push_back(x);
  }
  j["pieces"] = p;
  j["lower_bound"] = r.lower_bound;
  return j;
}

inline Json to_json(const CombTriangulation& t) {
  Json j;
  j["v"] = t.v();
  j["rotation"] = t.rotations();
  Json e = Json::array();
  for (auto& x : t.edge_list()) e.push_back({x[0], x[1], x[2]});
  j["edge_labels"] = e;
  return j;
}

inline std::string dump(const Json& j) { return j.dump() + "\n"; }

inline Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ParseError, what + ": " + e.what());
  }
}

inline Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path);
}

// nlohmann type errors become ParseError
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  }
}

inline ConvexTriangulation convex_from_json(const Json& j) {
  return guarded("convex triangulation", [&] {
    int m = j.at("m").get<int>();
    std::vector<Diag> d;
    for (auto& e : j.at("diagonals")) {
      if (e.size() != 2) throw Error(ErrorKind::ParseError, "diagonal must be a pair");
      d.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::vector<int> l;
    if (j.contains("labels")) l = j.at("labels").get<std::vector<int>>();
    return ConvexTriangulation::from_diagonals(m, d, l);
  });
}

inline CombTriangulation comb_from_json(const Json& j) {
  return guarded("comb triangulation", [&] {
    int v = j.at("v").get<int>();
    auto rot = j.at("rotation").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(rot.size()) != v) throw Error(ErrorKind::ParseError, "rotation size differs from v");
    std::vector<std::array<int, 3>> el;
    for (auto& e : j.at("edge_labels")) {
      if (e.size() != 3) throw Error(ErrorKind::ParseError, "edge label must be [u,v,label]");
      el.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    }
    return CombTriangulation(rot, el);
  });
}

using Instance = std::variant<ConvexTriangulation, CombTriangulation>;

inline Instance instance_from_json(const Json& j) {
  if (j.is_object() && j.contains("v")) return comb_from_json(j);
  if (j.is_object() && j.contains("m")) return convex_from_json(j);
  throw Error(ErrorKind::ParseError, "document is neither a convex nor a comb triangulation");
}

using AnySequence = std::variant<FlipSequence, SimFlipSequence>;

inline AnySequence sequence_from_json(const Json& j) {
  return guarded("sequence", [&]() -> AnySequence {
    std::string mode = j.at("mode").get<std::string>();
    if (mode != "labelled" && mode != "unlabelled") throw Error(ErrorKind::ParseError, "unknown mode " + mode);
    if (j.contains("rounds")) {
      SimFlipSequence s;
      s.rounds = j.at("rounds").get<std::vector<std::vector<int>>>();
      return s;
    }
    FlipSequence s;
    s.labelled = mode == "labelled";
    for (auto& x : j.at("steps")) {
      if (s.labelled)
        s.steps.push_back(x.get<int>());
      else
        s.diag_steps.emplace_back(x.at(0).get<int>(), x.at(1).get<int>());
    }
    return s;
  });
}

}  // namespace flipforge::io
