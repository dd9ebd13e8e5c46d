#include "gdes/spec_io.hpp"

#include <fstream>
#include <sstream>

#include "gdes/edes.hpp"
#include "gdes/error.hpp"

namespace gdes {

namespace {

using nlohmann::json;

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SpecError(path, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SpecError(path + "/" + key, "missing required field");
  return *it;
}

std::uint64_t as_uint(const json& v, const std::string& path) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw SpecError(path, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<std::uint32_t> as_uint_array(const json& v, const std::string& path) {
  if (!v.is_array()) throw SpecError(path, "expected an array of integers");
  std::vector<std::uint32_t> out;
  out.reserve(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    const std::uint64_t x = as_uint(v[k], path + "/" + std::to_string(k));
    if (x > UINT32_MAX) throw SpecError(path + "/" + std::to_string(k), "value too large");
    out.push_back(static_cast<std::uint32_t>(x));
  }
  return out;
}

WireMap as_wiremap(const json& v, std::size_t in_length, const std::string& path) {
  auto table = as_uint_array(v, path);
  for (std::size_t k = 0; k < table.size(); ++k)
    if (table[k] < 1 || table[k] > in_length)
      throw SpecError(path + "/" + std::to_string(k),
                      "position " + std::to_string(table[k]) + " is outside [1, " +
                          std::to_string(in_length) + "]");
  return WireMap(in_length, std::move(table));
}

RoundFunction sbox_round_fn(const json& rf, const GroupSpec& group, std::size_t t,
                            const std::string& path) {
  const std::size_t i = as_uint(field(rf, "i", path), path + "/i");
  const std::size_t j = as_uint(field(rf, "j", path), path + "/j");
  if (i == 0 || j == 0) throw SpecError(path, "S-box widths i and j must be positive");
  const json& boxes_doc = field(rf, "boxes", path);
  if (!boxes_doc.is_array() || boxes_doc.empty())
    throw SpecError(path + "/boxes", "expected a non-empty array of S-boxes");
  const std::size_t n = boxes_doc.size();
  if (t != j * n)
    throw SpecError(path, "half width t = " + std::to_string(t) + " must equal j * n_boxes = " +
                              std::to_string(j * n) + " (each box contributes j output nits)");
  const std::uint64_t rows = space_size_u64(group, i);
  const std::uint64_t cols = space_size_u64(group, j);
  std::vector<SBox> boxes;
  for (std::size_t b = 0; b < n; ++b) {
    const std::string bp = path + "/boxes/" + std::to_string(b);
    auto entries = as_uint_array(boxes_doc[b], bp);
    if (entries.size() != rows * cols)
      throw SpecError(bp, "expected " + std::to_string(rows) + "x" + std::to_string(cols) +
                              " entries, got " + std::to_string(entries.size()));
    for (std::size_t k = 0; k < entries.size(); ++k)
      if (entries[k] >= cols)
        throw SpecError(bp + "/" + std::to_string(k),
                        "entry " + std::to_string(entries[k]) + " is not below " +
                            std::to_string(cols));
    boxes.emplace_back(group, i, j, std::move(entries));
  }
  WireMap expansion = as_wiremap(field(rf, "expansion", path), t, path + "/expansion");
  if (expansion.out_length() != (i + j) * n)
    throw SpecError(path + "/expansion", "must produce (i + j) * n_boxes = " +
                                             std::to_string((i + j) * n) + " nits");
  return RoundFunction(SBoxRoundSpec(std::move(boxes), std::move(expansion)));
}

std::vector<RoundFunction> table_round_fns(const json& rf, const GroupSpec& group, std::size_t t,
                                           const std::string& path) {
  bool keyed = false;
  if (auto it = rf.find("keyed"); it != rf.end()) {
    if (!it->is_boolean()) throw SpecError(path + "/keyed", "expected a boolean");
    keyed = it->get<bool>();
  }
  const json& tables = field(rf, "tables", path);
  if (!tables.is_array() || tables.empty())
    throw SpecError(path + "/tables", "expected a non-empty array of tables");
  const std::uint64_t n = space_size_u64(group, t);
  std::vector<RoundFunction> out;
  for (std::size_t k = 0; k < tables.size(); ++k) {
    const std::string tp = path + "/tables/" + std::to_string(k);
    auto image32 = as_uint_array(tables[k], tp);
    if (image32.size() != n)
      throw SpecError(tp, "expected " + std::to_string(n) + " entries, got " +
                              std::to_string(image32.size()));
    std::vector<std::uint64_t> image(image32.begin(), image32.end());
    for (std::size_t y = 0; y < image.size(); ++y)
      if (image[y] >= n)
        throw SpecError(tp + "/" + std::to_string(y), "value is outside G^t");
    out.emplace_back(FunctionTable(group, t, std::move(image)), keyed);
  }
  return out;
}

}  // namespace

CipherSpec spec_from_json(const json& doc) {
  if (!doc.is_object()) throw SpecError("", "spec document must be a JSON object");
  if (auto it = doc.find("preset"); it != doc.end()) {
    if (!it->is_string()) throw SpecError("/preset", "expected a string");
    return preset_spec(it->get<std::string>());
  }

  const json& g = field(doc, "group", "");
  auto moduli = as_uint_array(field(g, "moduli", "/group"), "/group/moduli");
  for (std::size_t k = 0; k < moduli.size(); ++k)
    if (moduli[k] < 2) throw SpecError("/group/moduli/" + std::to_string(k), "modulus must be >= 2");
  if (moduli.empty()) throw SpecError("/group/moduli", "needs at least one modulus");
  GroupSpec group = [&] {
    try {
      return GroupSpec(moduli);
    } catch (const Error& e) {
      throw SpecError("/group", e.what());
    }
  }();

  CipherSpec::Params p;
  p.group = group;
  p.half_width = as_uint(field(doc, "t", ""), "/t");
  if (p.half_width == 0) throw SpecError("/t", "must be positive");
  p.rounds = as_uint(field(doc, "rounds", ""), "/rounds");
  p.key_length = as_uint(field(doc, "key_length", ""), "/key_length");
  p.initial_perm = as_wiremap(field(doc, "initial_perm", ""), 2 * p.half_width, "/initial_perm");
  if (p.initial_perm.out_length() != 2 * p.half_width)
    throw SpecError("/initial_perm", "must list " + std::to_string(2 * p.half_width) + " positions");
  if (!p.initial_perm.is_permutation()) throw SpecError("/initial_perm", "is not a bijection");
  if (auto it = doc.find("final_swap"); it != doc.end()) {
    if (!it->is_boolean()) throw SpecError("/final_swap", "expected a boolean");
    p.final_swap = it->get<bool>();
  }

  const json& ks = field(doc, "key_schedule", "");
  if (!ks.is_array()) throw SpecError("/key_schedule", "expected an array of wire maps");
  if (ks.size() != p.rounds)
    throw SpecError("/key_schedule", "has " + std::to_string(ks.size()) + " entries for " +
                                         std::to_string(p.rounds) + " rounds");
  for (std::size_t r = 0; r < ks.size(); ++r)
    p.key_schedule.push_back(
        as_wiremap(ks[r], p.key_length, "/key_schedule/" + std::to_string(r)));

  if (p.rounds > 0 || doc.contains("round_fn")) {
    const json& rf = field(doc, "round_fn", "");
    const json& type = field(rf, "type", "/round_fn");
    if (!type.is_string()) throw SpecError("/round_fn/type", "expected a string");
    const std::string kind = type.get<std::string>();
    if (kind == "sbox")
      p.round_fns.push_back(sbox_round_fn(rf, group, p.half_width, "/round_fn"));
    else if (kind == "table")
      p.round_fns = table_round_fns(rf, group, p.half_width, "/round_fn");
    else
      throw SpecError("/round_fn/type", "unknown round function type '" + kind + "'");
  }
  return CipherSpec(std::move(p));
}

json spec_to_json(const CipherSpec& spec) {
  auto table_of = [](const WireMap& m) {
    return std::vector<std::uint32_t>(m.table().begin(), m.table().end());
  };
  json doc;
  doc["group"]["moduli"] =
      std::vector<std::uint32_t>(spec.group().moduli().begin(), spec.group().moduli().end());
  doc["t"] = spec.half_width();
  doc["rounds"] = spec.rounds();
  doc["key_length"] = spec.key_length();
  doc["initial_perm"] = table_of(spec.initial_perm());
  doc["final_swap"] = spec.final_swap();
  doc["key_schedule"] = json::array();
  for (const auto& ks : spec.key_schedule()) doc["key_schedule"].push_back(table_of(ks));
  if (spec.round_fns().empty()) return doc;

  const RoundFunction& first = spec.round_fns().front();
  if (const auto* sb = first.sbox()) {
    json rf;
    rf["type"] = "sbox";
    rf["i"] = sb->boxes().front().row_width();
    rf["j"] = sb->boxes().front().col_width();
    rf["expansion"] = table_of(sb->expansion());
    rf["boxes"] = json::array();
    for (const auto& b : sb->boxes())
      rf["boxes"].push_back(std::vector<std::uint32_t>(b.entries().begin(), b.entries().end()));
    doc["round_fn"] = rf;
  } else {
    json rf;
    rf["type"] = "table";
    rf["keyed"] = first.subkey_length() > 0;
    rf["tables"] = json::array();
    for (const auto& f : spec.round_fns()) {
      const auto img = f.table()->image();
      rf["tables"].push_back(std::vector<std::uint64_t>(img.begin(), img.end()));
    }
    doc["round_fn"] = rf;
  }
  return doc;
}

CipherSpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("", "cannot open spec file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SpecError("", "'" + path + "' is not valid JSON: " + e.what());
  }
  return spec_from_json(doc);
}

CipherSpec preset_spec(const std::string& name) {
  if (name == "edes") return edes_spec();
  throw SpecError("/preset", "unknown preset '" + name + "'");
}

}  // namespace gdes
