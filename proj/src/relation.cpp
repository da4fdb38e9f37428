#include "relconv/relation.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "relconv/error.hpp"

namespace relconv {

// ---------------------------------------------------------------------------
// FiniteSet

FiniteSet::FiniteSet() : data_(std::make_shared<const Data>()) {}

FiniteSet::FiniteSet(std::vector<std::string> labels) {
  Data d;
  d.index.reserve(labels.size());
  for (Index i = 0; i < labels.size(); ++i) {
    if (!d.index.emplace(labels[i], i).second) {
      throw LabelError("duplicate label \"" + labels[i] + "\"");
    }
  }
  d.labels = std::move(labels);
  data_ = std::make_shared<const Data>(std::move(d));
}

FiniteSet FiniteSet::range(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return FiniteSet(std::move(labels));
}

std::optional<Index> FiniteSet::find(std::string_view label) const {
  auto it = data_->index.find(std::string(label));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Index FiniteSet::index_of(std::string_view label) const {
  if (auto i = find(label)) return *i;
  throw LabelError("unknown label \"" + std::string(label) + "\"");
}

bool operator==(const FiniteSet& a, const FiniteSet& b) {
  return a.data_ == b.data_ || a.data_->labels == b.data_->labels;
}

// ---------------------------------------------------------------------------
// Relation

namespace {

using Key = Relation::Key;

Key checked_mul(Key a, Key b) {
  if (a != 0 && b > std::numeric_limits<Key>::max() / a) {
    throw CapacityError("relation tuple space exceeds 64-bit key range");
  }
  return a * b;
}

Key extent(const std::vector<FiniteSet>& factors) {
  Key e = 1;
  for (const auto& f : factors) e = checked_mul(e, f.size());
  return e;
}

void normalize(std::vector<Key>& keys) {
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
}

std::vector<FiniteSet> concat(const std::vector<FiniteSet>& a, const std::vector<FiniteSet>& b) {
  std::vector<FiniteSet> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_same_type(const Relation& r, const Relation& s, const char* op) {
  if (r.domain() != s.domain() || r.codomain() != s.codomain()) {
    throw ArityMismatch(0, std::string(op) + ": relations have different types");
  }
}

}  // namespace

Relation::Relation(std::vector<FiniteSet> domain, std::vector<FiniteSet> codomain)
    : domain_(std::move(domain)), codomain_(std::move(codomain)) {
  init_extents();
}

Relation::Relation(std::vector<FiniteSet> domain, std::vector<FiniteSet> codomain,
                   const std::vector<Tuple>& tuples)
    : Relation(std::move(domain), std::move(codomain)) {
  keys_.reserve(tuples.size());
  for (const auto& t : tuples) keys_.push_back(encode(t));
  normalize(keys_);
}

void Relation::init_extents() {
  domain_extent_ = extent(domain_);
  codomain_extent_ = extent(codomain_);
  checked_mul(domain_extent_, codomain_extent_);
  radices_.clear();
  for (const auto& f : domain_) radices_.push_back(f.size());
  for (const auto& f : codomain_) radices_.push_back(f.size());
}

Relation Relation::from_keys(std::vector<FiniteSet> domain, std::vector<FiniteSet> codomain,
                             std::vector<Key> keys) {
  Relation r(std::move(domain), std::move(codomain));
  normalize(keys);
  r.keys_ = std::move(keys);
  return r;
}

Relation Relation::identity(const FiniteSet& set) { return identity(std::vector<FiniteSet>{set}); }

Relation Relation::identity(const std::vector<FiniteSet>& factors) {
  Relation r(factors, factors);
  const Key n = r.domain_extent_;
  r.keys_.reserve(n);
  for (Key i = 0; i < n; ++i) r.keys_.push_back(i * n + i);
  return r;
}

Relation Relation::subset(const FiniteSet& set, std::span<const Index> elements) {
  std::vector<Tuple> tuples;
  tuples.reserve(elements.size());
  for (Index e : elements) tuples.push_back({e});
  return Relation({}, {set}, tuples);
}

Relation Relation::full_subset(const FiniteSet& set) {
  Relation r({}, {set});
  r.keys_.resize(set.size());
  for (Key i = 0; i < set.size(); ++i) r.keys_[i] = i;
  return r;
}

Relation Relation::graph(const FiniteSet& from, const FiniteSet& to, std::span<const Index> map) {
  if (map.size() != from.size()) throw Error("graph: map is not total on its domain");
  Relation r({from}, {to});
  r.keys_.reserve(map.size());
  for (Index i = 0; i < map.size(); ++i) {
    if (map[i] >= to.size()) throw Error("graph: image index out of range");
    r.keys_.push_back(Key{i} * to.size() + map[i]);
  }
  normalize(r.keys_);
  return r;
}

Relation Relation::transposition(const FiniteSet& a, const FiniteSet& b) {
  std::vector<Key> keys;
  keys.reserve(a.size() * b.size());
  Relation r({a, b}, {b, a});
  for (Index i = 0; i < a.size(); ++i) {
    for (Index j = 0; j < b.size(); ++j) keys.push_back(r.encode(std::vector<Index>{i, j, j, i}));
  }
  normalize(keys);
  r.keys_ = std::move(keys);
  return r;
}

Key Relation::encode(std::span<const Index> tuple) const {
  if (tuple.size() != radices_.size()) {
    throw ArityMismatch(std::min(tuple.size(), radices_.size()), "tuple has wrong arity");
  }
  Key key = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= radices_[i]) {
      throw ArityMismatch(i, "tuple component " + std::to_string(i) + " out of range");
    }
    key = key * radices_[i] + tuple[i];
  }
  return key;
}

Relation::Tuple Relation::decode(Key key) const {
  Tuple t(radices_.size());
  for (std::size_t i = radices_.size(); i-- > 0;) {
    t[i] = static_cast<Index>(key % radices_[i]);
    key /= radices_[i];
  }
  return t;
}

std::vector<Relation::Tuple> Relation::tuples() const {
  std::vector<Tuple> out;
  out.reserve(keys_.size());
  for (Key k : keys_) out.push_back(decode(k));
  return out;
}

bool Relation::contains(std::span<const Index> tuple) const {
  if (tuple.size() != radices_.size()) return false;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= radices_[i]) return false;
  }
  return std::binary_search(keys_.begin(), keys_.end(), encode(tuple));
}

std::string Relation::format(std::span<const Index> tuple) const {
  std::string out = "(";
  const std::size_t k = domain_.size();
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    const FiniteSet& f = i < k ? domain_[i] : codomain_[i - k];
    out += tuple[i] < f.size() ? f.label(tuple[i]) : std::to_string(tuple[i]);
  }
  return out + ")";
}

bool operator==(const Relation& a, const Relation& b) {
  return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.keys_ == b.keys_;
}

Relation compose(const Relation& r, const Relation& s) {
  const auto& mid_r = r.codomain();
  const auto& mid_s = s.domain();
  for (std::size_t i = 0; i < std::max(mid_r.size(), mid_s.size()); ++i) {
    if (i >= mid_r.size() || i >= mid_s.size()) {
      throw ArityMismatch(i, "compose: arity mismatch at factor " + std::to_string(i) +
                                 " (left codomain has " + std::to_string(mid_r.size()) +
                                 " factors, right domain has " + std::to_string(mid_s.size()) + ")");
    }
    if (!(mid_r[i] == mid_s[i])) {
      throw ArityMismatch(i, "compose: carrier mismatch at factor " + std::to_string(i));
    }
  }
  const Key mid = r.codomain_extent();
  const Key out_extent = s.codomain_extent();
  const auto& sk = s.keys();
  std::vector<Key> keys;
  for (Key k : r.keys()) {
    const Key a = k / mid;
    const Key b = k % mid;
    auto lo = std::lower_bound(sk.begin(), sk.end(), b * out_extent);
    auto hi = std::lower_bound(lo, sk.end(), (b + 1) * out_extent);
    for (auto it = lo; it != hi; ++it) keys.push_back(a * out_extent + (*it % out_extent));
  }
  return Relation::from_keys(r.domain(), s.codomain(), std::move(keys));
}

Relation dagger(const Relation& r) {
  const Key da = r.domain_extent();
  const Key cb = r.codomain_extent();
  std::vector<Key> keys;
  keys.reserve(r.size());
  for (Key k : r.keys()) keys.push_back((k % cb) * da + k / cb);
  return Relation::from_keys(r.codomain(), r.domain(), std::move(keys));
}

Relation product(const Relation& r, const Relation& s) {
  const Key rb = r.codomain_extent();
  const Key sa = s.domain_extent();
  const Key sb = s.codomain_extent();
  Relation shape(concat(r.domain(), s.domain()), concat(r.codomain(), s.codomain()));
  std::vector<Key> keys;
  keys.reserve(r.size() * s.size());
  for (Key kr : r.keys()) {
    const Key a = kr / rb;
    const Key b = kr % rb;
    for (Key ks : s.keys()) {
      const Key a2 = ks / sb;
      const Key b2 = ks % sb;
      keys.push_back(((a * sa + a2) * rb + b) * sb + b2);
    }
  }
  return Relation::from_keys(shape.domain(), shape.codomain(), std::move(keys));
}

Relation set_union(const Relation& r, const Relation& s) {
  require_same_type(r, s, "union");
  std::vector<Key> keys;
  std::set_union(r.keys().begin(), r.keys().end(), s.keys().begin(), s.keys().end(),
                 std::back_inserter(keys));
  return Relation::from_keys(r.domain(), r.codomain(), std::move(keys));
}

Relation set_intersection(const Relation& r, const Relation& s) {
  require_same_type(r, s, "intersection");
  std::vector<Key> keys;
  std::set_intersection(r.keys().begin(), r.keys().end(), s.keys().begin(), s.keys().end(),
                        std::back_inserter(keys));
  return Relation::from_keys(r.domain(), r.codomain(), std::move(keys));
}

std::optional<Relation::Tuple> first_difference(const Relation& a, const Relation& b) {
  require_same_type(a, b, "first_difference");
  std::vector<Key> diff;
  std::set_symmetric_difference(a.keys().begin(), a.keys().end(), b.keys().begin(), b.keys().end(),
                                std::back_inserter(diff));
  if (diff.empty()) return std::nullopt;
  return a.decode(diff.front());
}

EquivalenceCheck is_equivalence(const Relation& r, std::span<const Index> carrier) {
  if (r.domain().size() != 1 || r.codomain().size() != 1 || !(r.domain()[0] == r.codomain()[0])) {
    throw ArityMismatch(0, "is_equivalence: not an endorelation on a single set");
  }
  const std::size_t n = r.domain()[0].size();
  std::vector<char> in(n, 0);
  for (Index c : carrier) in.at(c) = 1;

  EquivalenceCheck out;
  auto fail = [&](const char* prop, Index a, Index b) {
    out.holds = false;
    out.failed_property = prop;
    out.witness = {a, b};
    return out;
  };
  std::vector<Index> sorted(carrier.begin(), carrier.end());
  std::sort(sorted.begin(), sorted.end());
  for (Index c : sorted) {
    if (!r.contains({c, c})) return fail("reflexive", c, c);
  }
  // Adjacency restricted to the carrier.
  std::vector<std::vector<Index>> next(n);
  for (const auto& t : r.tuples()) {
    if (in[t[0]] && in[t[1]]) next[t[0]].push_back(t[1]);
  }
  for (Index a : sorted) {
    for (Index b : next[a]) {
      if (!r.contains({b, a})) return fail("symmetric", b, a);
    }
  }
  for (Index a : sorted) {
    for (Index b : next[a]) {
      for (Index c : next[b]) {
        if (!r.contains({a, c})) return fail("transitive", a, c);
      }
    }
  }
  return out;
}

}  // namespace relconv
