#include "cat0sq/format.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_detail.hpp"

namespace cat0sq {
namespace detail {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("byte " + std::to_string(e.byte), "invalid JSON");
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "/" + key, "missing field");
  return *it;
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) throw ParseError(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

void expect_version(const json& doc, std::string_view version, const std::string& where) {
  const auto v = string_field(doc, "format", where);
  if (v != version) throw ParseError(where + "/format", "unsupported format '" + v + "'");
}

json raw_to_json(RawComplex raw) {
  std::sort(raw.vertices.begin(), raw.vertices.end());
  std::sort(raw.edges.begin(), raw.edges.end(), [](const RawEdge& a, const RawEdge& b) { return a.id < b.id; });
  std::sort(raw.squares.begin(), raw.squares.end(), [](const RawSquare& a, const RawSquare& b) { return a.id < b.id; });
  json doc;
  doc["format"] = kFormatVersion;
  doc["vertices"] = raw.vertices;
  doc["edges"] = json::array();
  for (const auto& e : raw.edges) doc["edges"].push_back({{"id", e.id}, {"ends", {e.from, e.to}}});
  doc["squares"] = json::array();
  for (const auto& s : raw.squares) {
    json corners = json::array();
    for (const auto& c : s.corners) corners.push_back({{"vertex", c.vertex}, {"in", c.in_edge}, {"out", c.out_edge}});
    doc["squares"].push_back({{"id", s.id}, {"corners", std::move(corners)}});
  }
  return doc;
}

json complex_to_json(const SquareComplex& x) { return raw_to_json(x.to_raw()); }

RawComplex raw_from_json(const json& doc, const std::string& where) {
  expect_version(doc, kFormatVersion, where);
  RawComplex raw;
  const auto& vs = field(doc, "vertices", where);
  if (!vs.is_array()) throw ParseError(where + "/vertices", "expected an array");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!vs[i].is_string()) throw ParseError(where + "/vertices/" + std::to_string(i), "expected a string");
    raw.vertices.push_back(vs[i].get<std::string>());
  }
  const auto& es = field(doc, "edges", where);
  if (!es.is_array()) throw ParseError(where + "/edges", "expected an array");
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto at = where + "/edges/" + std::to_string(i);
    RawEdge e;
    e.id = string_field(es[i], "id", at);
    const auto& ends = field(es[i], "ends", at);
    if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string()) {
      throw ParseError(at + "/ends", "expected two vertex ids");
    }
    e.from = ends[0].get<std::string>();
    e.to = ends[1].get<std::string>();
    raw.edges.push_back(std::move(e));
  }
  const auto& ss = field(doc, "squares", where);
  if (!ss.is_array()) throw ParseError(where + "/squares", "expected an array");
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const auto at = where + "/squares/" + std::to_string(i);
    RawSquare s;
    s.id = string_field(ss[i], "id", at);
    const auto& cs = field(ss[i], "corners", at);
    if (!cs.is_array() || cs.size() != 4) throw ParseError(at + "/corners", "expected four corner records");
    for (std::size_t k = 0; k < 4; ++k) {
      const auto cat = at + "/corners/" + std::to_string(k);
      s.corners[k] = {string_field(cs[k], "vertex", cat), string_field(cs[k], "in", cat),
                      string_field(cs[k], "out", cat)};
    }
    raw.squares.push_back(std::move(s));
  }
  return raw;
}

}  // namespace detail

RawComplex parse_raw(std::string_view text) { return detail::raw_from_json(detail::parse_json(text), ""); }

SquareComplex parse_complex(std::string_view text) { return SquareComplex::from_raw(parse_raw(text)); }

std::string to_text(const SquareComplex& x) { return detail::complex_to_json(x).dump(2) + "\n"; }

std::string to_text(const RawComplex& raw) { return detail::raw_to_json(raw).dump(2) + "\n"; }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << contents;
}

SquareComplex load(const std::filesystem::path& path) { return parse_complex(read_file(path)); }

void save(const SquareComplex& x, const std::filesystem::path& path) { write_file(path, to_text(x)); }

}  // namespace cat0sq
