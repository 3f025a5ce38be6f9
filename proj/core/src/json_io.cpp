#include "twistconv/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace twistconv::json {

namespace {

using njson = nlohmann::json;

constexpr std::int64_t kMaxIndex = std::int64_t{1} << 32;

njson parse_document(const std::string& text) {
  try {
    return njson::parse(text);
  } catch (const njson::exception& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

void expect_keys(const njson& obj, std::initializer_list<const char*> keys, const char* what) {
  if (!obj.is_object()) {
    throw std::invalid_argument(std::string(what) + ": expected a JSON object");
  }
  for (const char* key : keys) {
    if (!obj.contains(key)) {
      throw std::invalid_argument(std::string(what) + ": missing key \"" + key + "\"");
    }
  }
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* k : keys) {
      if (key == k) known = true;
    }
    if (!known) {
      throw std::invalid_argument(std::string(what) + ": unknown key \"" + key + "\"");
    }
  }
}

std::int64_t get_index_component(const njson& v, const char* what) {
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string(what) + ": index components must be integers");
  }
  const auto n = v.get<std::int64_t>();
  if (n < -kMaxIndex || n > kMaxIndex) {
    throw std::invalid_argument(std::string(what) + ": index component out of range");
  }
  return n;
}

double get_finite_double(const njson& v, const char* what) {
  if (!v.is_number()) {
    throw std::invalid_argument(std::string(what) + ": expected a number");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    throw std::invalid_argument(std::string(what) + ": number not finite");
  }
  return x;
}

int get_small_int(const njson& v, const char* what, int lo, int hi) {
  if (!v.is_number_integer()) {
    throw std::invalid_argument(std::string(what) + ": expected an integer");
  }
  const auto n = v.get<std::int64_t>();
  if (n < lo || n > hi) {
    throw std::invalid_argument(std::string(what) + ": value out of range");
  }
  return static_cast<int>(n);
}

Index parse_index(const njson& arr, int d, const char* what) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != d) {
    throw std::invalid_argument(std::string(what) + ": index must be an array of length d");
  }
  Index idx(static_cast<std::size_t>(d));
  for (int t = 0; t < d; ++t) {
    idx[static_cast<std::size_t>(t)] = get_index_component(arr[static_cast<std::size_t>(t)], what);
  }
  return idx;
}

Complex parse_re_im_pair(const njson& v, const char* what) {
  if (!v.is_array() || v.size() != 2) {
    throw std::invalid_argument(std::string(what) + ": expected a [re, im] pair");
  }
  return {get_finite_double(v[0], what), get_finite_double(v[1], what)};
}

Sequence parse_sequence_object(const njson& doc) {
  expect_keys(doc, {"d", "entries"}, "sequence");
  const int d = get_small_int(doc["d"], "sequence d", 1, 8);
  if (!doc["entries"].is_array()) {
    throw std::invalid_argument("sequence: \"entries\" must be an array");
  }
  Sequence s(d);
  std::set<IndexPair> seen;
  for (const njson& entry : doc["entries"]) {
    expect_keys(entry, {"k", "l", "re", "im"}, "sequence entry");
    Index k = parse_index(entry["k"], d, "sequence entry");
    Index l = parse_index(entry["l"], d, "sequence entry");
    const Complex v{get_finite_double(entry["re"], "sequence entry"),
                    get_finite_double(entry["im"], "sequence entry")};
    if (!seen.emplace(k, l).second) {
      throw std::invalid_argument("sequence: duplicate support index");
    }
    s.set(std::move(k), std::move(l), v);
  }
  return s;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_index(std::string& out, const Index& idx) {
  out += '[';
  for (std::size_t t = 0; t < idx.size(); ++t) {
    if (t) out += ',';
    out += std::to_string(idx[t]);
  }
  out += ']';
}

void append_sequence(std::string& out, const Sequence& s) {
  out += "{\"d\":";
  out += std::to_string(s.dim());
  out += ",\"entries\":[";
  bool first = true;
  for (const auto& [kl, v] : s.entries()) {
    if (!first) out += ',';
    first = false;
    out += "{\"k\":";
    append_index(out, kl.first);
    out += ",\"l\":";
    append_index(out, kl.second);
    out += ",\"re\":";
    out += fmt(v.real());
    out += ",\"im\":";
    out += fmt(v.imag());
    out += '}';
  }
  out += "]}";
}

void append_complex_vector(std::string& out, const Eigen::VectorXcd& v) {
  out += '[';
  for (Eigen::Index t = 0; t < v.size(); ++t) {
    if (t) out += ',';
    out += '[';
    out += fmt(v(t).real());
    out += ',';
    out += fmt(v(t).imag());
    out += ']';
  }
  out += ']';
}

void append_report(std::string& out, const InversionReport& r) {
  out += "{\"input\":";
  append_sequence(out, r.input);
  out += ",\"p\":";
  out += std::to_string(r.tp.p());
  out += ",\"q\":";
  out += std::to_string(r.tp.q());
  out += ",\"inverse\":";
  append_sequence(out, r.inverse);
  out += ",\"residual_right\":";
  out += fmt(r.residual_right);
  out += ",\"residual_left\":";
  out += fmt(r.residual_left);
  out += ",\"det_symbol_min\":";
  out += fmt(r.det_symbol_min);
  out += ",\"grid_size_used\":";
  out += std::to_string(r.grid_size_used);
  out += ",\"refinements\":";
  out += std::to_string(r.refinements);
  out += '}';
}

}  // namespace

Sequence parse_sequence(const std::string& text) {
  return parse_sequence_object(parse_document(text));
}

std::string write_sequence(const Sequence& s) {
  std::string out;
  append_sequence(out, s);
  return out;
}

ParsedFiniteGrid parse_finite_grid(const std::string& text) {
  const njson doc = parse_document(text);
  expect_keys(doc, {"p", "q", "data"}, "finite grid");
  const int p = get_small_int(doc["p"], "finite grid p", 1, 4096);
  const int q = get_small_int(doc["q"], "finite grid q", -4096, 4096);
  const njson& data = doc["data"];
  if (!data.is_array() || static_cast<int>(data.size()) != p) {
    throw std::invalid_argument("finite grid: \"data\" must be a p x p array");
  }
  ParsedFiniteGrid out{FiniteGrid(p), q};
  for (int j = 0; j < p; ++j) {
    const njson& row = data[static_cast<std::size_t>(j)];
    if (!row.is_array() || static_cast<int>(row.size()) != p) {
      throw std::invalid_argument("finite grid: \"data\" must be a p x p array");
    }
    for (int k = 0; k < p; ++k) {
      out.grid.set(j, k, parse_re_im_pair(row[static_cast<std::size_t>(k)], "finite grid entry"));
    }
  }
  return out;
}

std::string write_finite_grid(const FiniteGrid& g, int q) {
  std::string out = "{\"p\":";
  out += std::to_string(g.p());
  out += ",\"q\":";
  out += std::to_string(q);
  out += ",\"data\":[";
  for (int j = 0; j < g.p(); ++j) {
    if (j) out += ',';
    out += '[';
    for (int k = 0; k < g.p(); ++k) {
      if (k) out += ',';
      out += '[';
      out += fmt(g.at(j, k).real());
      out += ',';
      out += fmt(g.at(j, k).imag());
      out += ']';
    }
    out += ']';
  }
  out += "]}";
  return out;
}

GaborConfig parse_gabor_config(const std::string& text) {
  const njson doc = parse_document(text);
  expect_keys(doc, {"L", "a_step", "b_step", "window"}, "gabor config");
  GaborConfig cfg;
  cfg.L = get_small_int(doc["L"], "gabor config L", 1, 1 << 16);
  cfg.a_step = get_small_int(doc["a_step"], "gabor config a_step", 1, 1 << 16);
  cfg.b_step = get_small_int(doc["b_step"], "gabor config b_step", 1, 1 << 16);
  const njson& window = doc["window"];
  if (!window.is_array() || static_cast<int>(window.size()) != cfg.L) {
    throw std::invalid_argument("gabor config: \"window\" must have length L");
  }
  cfg.window.resize(cfg.L);
  for (int t = 0; t < cfg.L; ++t) {
    cfg.window(t) = parse_re_im_pair(window[static_cast<std::size_t>(t)], "gabor window entry");
  }
  return cfg;
}

std::string write_inversion_report(const InversionReport& r) {
  std::string out;
  append_report(out, r);
  return out;
}

std::string write_residual_pair(double right, double left) {
  std::string out = "{\"residual_right\":";
  out += fmt(right);
  out += ",\"residual_left\":";
  out += fmt(left);
  out += '}';
  return out;
}

std::string write_dual_window(const DualWindowResult& r) {
  std::string out = "{\"gamma\":";
  append_complex_vector(out, r.gamma);
  out += ",\"report\":";
  append_report(out, r.report);
  out += '}';
  return out;
}

ParsedSecond parse_sequence_or_report(const std::string& text) {
  const njson doc = parse_document(text);
  if (doc.is_object() && doc.contains("inverse")) {
    expect_keys(doc,
                {"input", "p", "q", "inverse", "residual_right", "residual_left",
                 "det_symbol_min", "grid_size_used", "refinements"},
                "inversion report");
    ParsedSecond out;
    out.seq = parse_sequence_object(doc["inverse"]);
    out.from_report = true;
    out.p = get_small_int(doc["p"], "inversion report p", 1, 1 << 16);
    out.q = get_small_int(doc["q"], "inversion report q", -(1 << 16), 1 << 16);
    return out;
  }
  return ParsedSecond{parse_sequence_object(doc), false, 0, 0};
}

}  // namespace twistconv::json
