#include "relconv/definition_file.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace relconv {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? std::string("/") : path) + ": " + what, 0, 0, path);
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

std::string escape(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

const std::string& as_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get_ref<const std::string&>();
}

const json::array_t& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j.get_ref<const json::array_t&>();
}

const json::object_t& as_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  return j.get_ref<const json::object_t&>();
}

Index label(const FiniteSet& carrier, const json& j, const std::string& path) {
  const std::string& s = as_string(j, path);
  auto i = carrier.find(s);
  if (!i) fail(path, "unknown label \"" + s + "\"");
  return *i;
}

Index label_key(const FiniteSet& carrier, const std::string& key, const std::string& path) {
  auto i = carrier.find(key);
  if (!i) fail(path, "unknown label \"" + key + "\"");
  return *i;
}

Rational fraction(const json& j, const std::string& path) {
  const std::string& s = as_string(j, path);
  try {
    return parse_fraction(s);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

std::vector<Index> tuple_of(const FiniteSet& carrier, const json& j, std::size_t arity, const std::string& path) {
  const auto& a = as_array(j, path);
  if (a.size() != arity) fail(path, "expected " + std::to_string(arity) + " labels");
  std::vector<Index> t;
  for (std::size_t i = 0; i < arity; ++i) t.push_back(label(carrier, a[i], path + "/" + std::to_string(i)));
  return t;
}

std::vector<Index> parse_involution(const FiniteSet& carrier, const json& j) {
  std::vector<Index> inv(carrier.size(), kUndefined);
  const auto& pairs = as_array(j, "/I");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::string path = "/I/" + std::to_string(i);
    const auto t = tuple_of(carrier, pairs[i], 2, path);
    if (inv[t[0]] != kUndefined) fail(path, "I is given twice for \"" + carrier.label(t[0]) + "\"");
    inv[t[0]] = t[1];
  }
  for (Index x = 0; x < inv.size(); ++x) {
    if (inv[x] == kUndefined) fail("/I", "I is not defined on \"" + carrier.label(x) + "\"");
  }
  return inv;
}

GroupSection parse_group(const FiniteSet& carrier, const json& j) {
  const auto& obj = as_object(j, "/group");
  for (const auto& [k, v] : obj) {
    if (k != "table" && k != "normal_subgroup") fail("/group/" + escape(k), "unknown key");
  }
  if (!obj.count("table")) fail("/group", "missing \"table\"");
  if (!obj.count("normal_subgroup")) fail("/group", "missing \"normal_subgroup\"");
  GroupSection g;
  const auto& rows = as_array(obj.at("table"), "/group/table");
  if (rows.size() != carrier.size()) fail("/group/table", "expected one row per carrier element");
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::string path = "/group/table/" + std::to_string(r);
    const auto& row = as_array(rows[r], path);
    if (row.size() != carrier.size()) fail(path, "expected one entry per carrier element");
    std::vector<std::string> labels;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const std::string cp = path + "/" + std::to_string(c);
      labels.push_back(carrier.label(label(carrier, row[c], cp)));
    }
    g.table.push_back(std::move(labels));
  }
  const auto& sub = as_array(obj.at("normal_subgroup"), "/group/normal_subgroup");
  std::set<Index> seen;
  for (std::size_t i = 0; i < sub.size(); ++i) seen.insert(label(carrier, sub[i], "/group/normal_subgroup/" + std::to_string(i)));
  for (Index x : seen) g.normal_subgroup.push_back(carrier.label(x));
  return g;
}

RelationalHaarSystem parse_haar(const FiniteSet& carrier, const json& j) {
  RelationalHaarSystem mu;
  mu.per_element.resize(carrier.size());
  for (const auto& [gk, by_h] : as_object(j, "/haar")) {
    const std::string gp = "/haar/" + escape(gk);
    const Index g = label_key(carrier, gk, gp);
    for (const auto& [hk, by_k] : as_object(by_h, gp)) {
      const std::string hp = gp + "/" + escape(hk);
      const Index h = label_key(carrier, hk, hp);
      for (const auto& [kk, w] : as_object(by_k, hp)) {
        const std::string kp = hp + "/" + escape(kk);
        const Index k = label_key(carrier, kk, kp);
        const Rational value = fraction(w, kp);
        if (sgn(value) < 0) fail(kp, "negative weight");
        mu.per_element[g].set({h, k}, value);
      }
    }
  }
  return mu;
}

std::vector<std::pair<std::string, AlgebraElement>> parse_functions(const FiniteSet& carrier, const json& j) {
  std::vector<std::pair<std::string, AlgebraElement>> out;
  for (const auto& [name, values] : as_object(j, "/functions")) {
    const std::string fp = "/functions/" + escape(name);
    AlgebraElement f(carrier.size());
    for (const auto& [lk, z] : as_object(values, fp)) {
      const std::string vp = fp + "/" + escape(lk);
      const Index x = label_key(carrier, lk, vp);
      const auto& parts = as_array(z, vp);
      if (parts.size() != 2) fail(vp, "expected [re, im]");
      f[x] = Complex(fraction(parts[0], vp + "/0"), fraction(parts[1], vp + "/1"));
    }
    out.emplace_back(name, std::move(f));
  }
  return out;
}

}  // namespace

const AlgebraElement* Definition::function(std::string_view name) const {
  for (const auto& [n, f] : functions) {
    if (n == name) return &f;
  }
  return nullptr;
}

Definition parse_definition(std::string_view text, std::size_t carrier_limit) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    // Drop the library's "[json.exception.parse_error.101] " prefix.
    if (auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
    // and its own location, which is replaced by ours.
    if (msg.rfind("parse error at line", 0) == 0) {
      if (auto p = msg.find(": "); p != std::string::npos) msg = "parse error: " + msg.substr(p + 2);
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg, line, col);
  }
  const auto& root = as_object(doc, "");
  static const std::set<std::string> known = {"carrier", "L", "group", "I", "haar", "functions"};
  for (const auto& [k, v] : root) {
    if (!known.count(k)) fail("/" + escape(k), "unknown key");
  }
  if (!root.count("carrier")) fail("", "missing \"carrier\"");
  std::vector<std::string> labels;
  std::set<std::string> seen;
  const auto& carr = as_array(root.at("carrier"), "/carrier");
  for (std::size_t i = 0; i < carr.size(); ++i) {
    const std::string path = "/carrier/" + std::to_string(i);
    const std::string& s = as_string(carr[i], path);
    if (!seen.insert(s).second) fail(path, "duplicate label \"" + s + "\"");
    labels.push_back(s);
  }
  if (labels.empty()) fail("/carrier", "carrier is empty");
  if (labels.size() > carrier_limit) {
    fail("/carrier", "carrier has " + std::to_string(labels.size()) + " elements, limit is " + std::to_string(carrier_limit));
  }
  const FiniteSet carrier(labels);

  const bool has_l = root.count("L") != 0;
  const bool has_group = root.count("group") != 0;
  if (has_l == has_group) fail("", "exactly one of \"L\" and \"group\" is required");

  std::optional<RelationalGroupoid> structure;
  std::optional<GroupSection> group;
  try {
    if (has_l) {
      if (!root.count("I")) fail("", "\"I\" is required with \"L\"");
      std::vector<Relation::Tuple> triples;
      const auto& l = as_array(root.at("L"), "/L");
      for (std::size_t i = 0; i < l.size(); ++i) triples.push_back(tuple_of(carrier, l[i], 3, "/L/" + std::to_string(i)));
      structure.emplace(carrier, Relation({carrier, carrier}, {carrier}, triples), parse_involution(carrier, root.at("I")),
                        carrier_limit);
    } else {
      group = parse_group(carrier, root.at("group"));
      std::vector<std::vector<Index>> table;
      for (const auto& row : group->table) {
        std::vector<Index> r;
        for (const auto& s : row) r.push_back(carrier.index_of(s));
        table.push_back(std::move(r));
      }
      GroupoidTable gt = [&] {
        try {
          return GroupoidTable::group(carrier, table);
        } catch (const Error& e) {
          fail("/group/table", e.what());
        }
      }();
      std::vector<Index> sub;
      for (const auto& s : group->normal_subgroup) sub.push_back(carrier.index_of(s));
      try {
        structure.emplace(from_group_and_normal_subgroup(gt, sub));
      } catch (const Error& e) {
        fail("/group/normal_subgroup", e.what());
      }
      if (root.count("I")) {
        const auto inv = parse_involution(carrier, root.at("I"));
        if (!std::equal(inv.begin(), inv.end(), structure->involution().begin())) {
          fail("/I", "I does not agree with inversion in the group");
        }
      }
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    fail("", e.what());
  }

  Definition def{std::move(*structure), std::move(group), std::nullopt, {}};
  if (root.count("haar")) def.haar = parse_haar(carrier, root.at("haar"));
  if (root.count("functions")) def.functions = parse_functions(carrier, root.at("functions"));
  return def;
}

Definition load_definition(const std::string& path, std::size_t carrier_limit) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read " + path, 0, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_definition(buf.str(), carrier_limit);
}

std::string serialize(const Definition& def) {
  const FiniteSet& G = def.carrier();
  json root = json::object();
  root["carrier"] = G.labels();
  if (def.group) {
    root["group"] = {{"normal_subgroup", def.group->normal_subgroup}, {"table", def.group->table}};
  } else {
    json l = json::array();
    for (const auto& t : def.structure.l().tuples()) l.push_back({G.label(t[0]), G.label(t[1]), G.label(t[2])});
    root["L"] = std::move(l);
    json inv = json::array();
    for (Index x = 0; x < G.size(); ++x) inv.push_back({G.label(x), G.label(def.structure.inverse(x))});
    root["I"] = std::move(inv);
  }
  if (def.haar) {
    json haar = json::object();
    for (Index g = 0; g < G.size(); ++g) {
      const auto& m = def.haar->per_element.at(g);
      if (m.empty()) continue;
      json by_h = json::object();
      for (const auto& [p, w] : m.weights()) by_h[G.label(p.first)][G.label(p.second)] = to_string(w);
      haar[G.label(g)] = std::move(by_h);
    }
    root["haar"] = std::move(haar);
  }
  if (!def.functions.empty()) {
    json fns = json::object();
    for (const auto& [name, f] : def.functions) {
      json values = json::object();
      for (Index x : f.support()) values[G.label(x)] = {to_string(f[x].re), to_string(f[x].im)};
      fns[name] = std::move(values);
    }
    root["functions"] = std::move(fns);
  }
  return root.dump(2) + "\n";
}

Definition definition_from(const CorpusEntry& entry) {
  Definition def{entry.group, std::nullopt, entry.haar, entry.functions};
  std::sort(def.functions.begin(), def.functions.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return def;
}

}  // namespace relconv
