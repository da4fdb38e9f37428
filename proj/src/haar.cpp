#include "relconv/haar.hpp"

#include <algorithm>

namespace relconv {

namespace {

std::string pair_label(const FiniteSet& s, const Pair& p) {
  return "(" + s.label(p.first) + "," + s.label(p.second) + ")";
}

std::string element_pair(const FiniteSet& s, Index a, Index b) { return pair_label(s, {a, b}); }

/// Quotient pairs (a, b) with a o b = target.
std::vector<Pair> quotient_fiber(const GroupoidTable& q, Index target) {
  std::vector<Pair> out;
  for (Index a = 0; a < q.size(); ++a) {
    for (Index b = 0; b < q.size(); ++b) {
      auto ab = q.compose(a, b);
      if (ab && *ab == target) out.emplace_back(a, b);
    }
  }
  return out;
}

void require_size(const RelationalGroupoid& g, const RelationalHaarSystem& mu) {
  if (mu.per_element.size() != g.size()) {
    throw MeasureError("relational Haar system has " + std::to_string(mu.per_element.size()) +
                       " measures for a carrier of size " + std::to_string(g.size()));
  }
}

}  // namespace

RightHaarSystem counting_haar(const GroupoidTable& g) {
  RightHaarSystem h;
  for (Index x = 0; x < g.objects().size(); ++x) h.per_object.push_back(PointMeasure::uniform(g.source_fiber(x), 1));
  return h;
}

RightHaarSystem normalized_counting_haar(const GroupoidTable& g) {
  RightHaarSystem h;
  for (Index x = 0; x < g.objects().size(); ++x) {
    const auto fiber = g.source_fiber(x);
    h.per_object.push_back(PointMeasure::uniform(fiber, Rational(1, static_cast<unsigned long>(fiber.size()))));
  }
  return h;
}

HaarCheck check_right_haar(const GroupoidTable& g, const RightHaarSystem& h) {
  HaarCheck out;
  if (h.per_object.size() != g.objects().size()) {
    out.holds = false;
    out.detail = "expected one measure per object";
    return out;
  }
  for (Index x = 0; x < g.objects().size(); ++x) {
    for (const auto& [a, w] : h.per_object[x].weights()) {
      if (a >= g.size() || g.source(a) != x) {
        out.holds = false;
        out.witness = a < g.size() ? a : kUndefined;
        out.detail = "measure at object " + g.objects().label(x) + " charges a morphism outside its source fiber";
        return out;
      }
    }
  }
  for (Index gamma = 0; gamma < g.size(); ++gamma) {
    const Index x = g.source(gamma);
    const Index y = g.target(gamma);
    const PointMeasure moved = pushforward<Index, Index>(
        h.per_object[y], [&](const Index& eta) -> std::optional<Index> { return g.compose(eta, gamma); });
    if (moved != h.per_object[x]) {
      out.holds = false;
      out.witness = gamma;
      out.detail = "right translation by " + g.morphisms().label(gamma) + " does not preserve the measure";
      return out;
    }
  }
  return out;
}

Disintegration disintegrate(const PairMeasure& m, const std::function<Pair(const Pair&)>& projection) {
  Disintegration d;
  d.base = pushforward<Pair, Pair>(m, [&](const Pair& p) -> std::optional<Pair> { return projection(p); });
  for (const auto& [p, w] : m.weights()) {
    const Pair b = projection(p);
    d.conditionals[b].set(p, w / d.base.weight(b));
  }
  return d;
}

PairMeasure reassemble(const Disintegration& d) {
  PairMeasure out;
  for (const auto& [b, cond] : d.conditionals) {
    const Rational w = d.base.weight(b);
    for (const auto& [p, c] : cond.weights()) out.add(p, w * c);
  }
  return out;
}

PairMeasure quotient_pushforward(const QuotientData& qd, const PairMeasure& m) {
  return pushforward<Pair, Pair>(m, [&](const Pair& p) -> std::optional<Pair> {
    if (qd.class_of.at(p.first) == kUndefined || qd.class_of.at(p.second) == kUndefined) return std::nullopt;
    return qd.project(p);
  });
}

Disintegration disintegrate(const QuotientData& qd, const PairMeasure& m) {
  return disintegrate(m, [&](const Pair& p) {
    if (qd.class_of.at(p.first) == kUndefined || qd.class_of.at(p.second) == kUndefined) {
      throw MeasureError("disintegrate: measure charges a pair outside the constraint set");
    }
    return qd.project(p);
  });
}

PairMeasure pair_measure_from_haar(const GroupoidTable& q, const RightHaarSystem& h, Index target) {
  PairMeasure out;
  const PointMeasure& base = h.per_object.at(q.source(target));
  for (const Pair& p : quotient_fiber(q, target)) out.set(p, base.weight(p.second));
  return out;
}

bool CheckReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const CheckEntry& e) { return e.passed; });
}

const CheckEntry* CheckReport::find(const std::string& id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

RightHaarSystem induced_quotient_haar(const QuotientData& qd, const RelationalHaarSystem& mu) {
  const GroupoidTable& Q = qd.quotient;
  RightHaarSystem h;
  for (Index x = 0; x < Q.objects().size(); ++x) {
    const Index u = Q.unit(x);
    const PairMeasure nu = quotient_pushforward(qd, mu.per_element.at(qd.representative(u)));
    PointMeasure proj;
    for (const auto& [p, w] : nu.weights()) proj.add(p.second, w);
    h.per_object.push_back(std::move(proj));
  }
  return h;
}

CheckReport check_relational_haar(const RelationalGroupoid& g, const QuotientData& qd, const RelationalHaarSystem& mu) {
  require_size(g, mu);
  const FiniteSet& G = g.carrier();
  const GroupoidTable& Q = qd.quotient;
  CheckReport report;

  {
    CheckEntry e{"support", "mu_g lives on the fiber of g and vanishes off C", true, {}};
    for (Index x = 0; x < g.size() && e.passed; ++x) {
      const auto& fiber = g.fiber(x);
      for (const auto& [p, w] : mu.per_element[x].weights()) {
        if (!std::binary_search(fiber.begin(), fiber.end(), p) || !g.in_constraint(x)) {
          e.passed = false;
          e.witness = "g=" + G.label(x) + " charges " + pair_label(G, p);
          break;
        }
      }
    }
    report.entries.push_back(e);
    if (!e.passed) {
      // The remaining conditions are meaningless for measures off the fibers.
      for (const char* id : {"(i)", "(ii)", "(iii)"}) report.entries.push_back({id, "skipped", false, "support"});
      return report;
    }
  }

  std::vector<PairMeasure> pushed(g.size());
  for (Index x = 0; x < g.size(); ++x) {
    if (g.in_constraint(x)) pushed[x] = quotient_pushforward(qd, mu.per_element[x]);
  }

  {
    CheckEntry e{"(i)", "(q_g)_* mu_g = (q_g')_* mu_g' whenever q(g) = q(g')", true, {}};
    for (const auto& cls : qd.classes) {
      for (std::size_t i = 1; i < cls.size() && e.passed; ++i) {
        if (pushed[cls[i]] != pushed[cls[0]]) {
          e.passed = false;
          e.witness = element_pair(G, cls[0], cls[i]);
        }
      }
    }
    report.entries.push_back(e);
  }

  {
    CheckEntry e{"(ii)", "nu = (q_g)_* mu_g is a right Haar system on the quotient", true, {}};
    std::vector<std::optional<PointMeasure>> per_object(Q.objects().size());
    for (Index a = 0; a < Q.size() && e.passed; ++a) {
      PointMeasure proj;
      for (const auto& [p, w] : pushed[qd.representative(a)].weights()) proj.add(p.second, w);
      auto& slot = per_object[Q.source(a)];
      if (!slot) {
        slot = std::move(proj);
      } else if (*slot != proj) {
        e.passed = false;
        e.witness = "class " + Q.morphisms().label(a) + " projects to a different source-fiber measure";
      }
    }
    if (e.passed) {
      RightHaarSystem h;
      for (auto& m : per_object) h.per_object.push_back(m.value_or(PointMeasure{}));
      const HaarCheck hc = check_right_haar(Q, h);
      if (!hc.holds) {
        e.passed = false;
        e.witness = hc.detail;
      }
    }
    report.entries.push_back(e);
  }

  {
    CheckEntry e{"(iii)", "mu_g disintegrates with respect to q_g", true, {}};
    for (Index x : g.constraint_elements()) {
      const Disintegration d = disintegrate(qd, mu.per_element[x]);
      bool ok = reassemble(d) == mu.per_element[x];
      for (const auto& [b, cond] : d.conditionals) ok = ok && cond.is_probability();
      if (!ok) {
        e.passed = false;
        e.witness = "g=" + G.label(x);
        break;
      }
    }
    report.entries.push_back(e);
  }
  return report;
}

Classification is_l2_invariant(const RelationalGroupoid& g, const RelationalHaarSystem& mu) {
  require_size(g, mu);
  for (const auto& t : g.l2().tuples()) {
    if (t[0] < t[1] && mu.per_element[t[0]] != mu.per_element[t[1]]) {
      return {false, element_pair(g.carrier(), t[0], t[1])};
    }
  }
  return {};
}

SplitResult is_split(const RelationalGroupoid& g, const QuotientData& qd, const RelationalHaarSystem& mu) {
  require_size(g, mu);
  const FiniteSet& G = g.carrier();
  const FiniteSet& Qm = qd.quotient.morphisms();
  SplitResult out;
  out.tau.resize(g.size());
  for (Index x : g.constraint_elements()) {
    const Disintegration d = disintegrate(qd, mu.per_element[x]);
    ClassMeasures& tau = out.tau[x];
    for (const auto& [classes, cond] : d.conditionals) {
      PointMeasure row, col;
      for (const auto& [p, w] : cond.weights()) {
        row.add(p.first, w);
        col.add(p.second, w);
      }
      const auto where = "g=" + G.label(x) + ", classes " + pair_label(Qm, classes);
      for (Index h : qd.classes[classes.first]) {
        for (Index k : qd.classes[classes.second]) {
          if (cond.weight({h, k}) != row.weight(h) * col.weight(k)) {
            out.holds = false;
            out.witness = where + ": conditional is not a product at " + element_pair(G, h, k);
            return out;
          }
        }
      }
      for (const auto& [cls, marginal] : {std::pair{classes.first, row}, std::pair{classes.second, col}}) {
        auto [it, inserted] = tau.emplace(cls, marginal);
        if (!inserted && it->second != marginal) {
          out.holds = false;
          out.witness = where + ": marginals on class " + Qm.label(cls) + " disagree";
          return out;
        }
      }
    }
  }
  return out;
}

StrongSplitResult is_strongly_split(const RelationalGroupoid& g, const QuotientData& qd,
                                    const RelationalHaarSystem& mu) {
  const SplitResult split = is_split(g, qd, mu);
  StrongSplitResult out;
  if (!split.holds) {
    out.holds = false;
    out.witness = "not split: " + split.witness;
    return out;
  }
  for (Index x : g.constraint_elements()) {
    for (const auto& [cls, tau] : split.tau[x]) {
      auto [it, inserted] = out.tau.emplace(cls, tau);
      if (!inserted && it->second != tau) {
        out.holds = false;
        out.witness = "tau^g on class " + qd.quotient.morphisms().label(cls) + " differs at g=" + g.carrier().label(x);
        out.tau.clear();
        return out;
      }
    }
  }
  return out;
}

RelationalHaarSystem build_from_conditionals(
    const RelationalGroupoid& g, const QuotientData& qd, const RightHaarSystem& nu,
    const std::function<PairMeasure(Index element, const Pair& classes)>& conditional) {
  const GroupoidTable& Q = qd.quotient;
  if (nu.per_object.size() != Q.objects().size()) throw MeasureError("quotient Haar system has wrong size");
  RelationalHaarSystem mu;
  mu.per_element.resize(g.size());
  for (Index x : g.constraint_elements()) {
    const Index target = qd.class_of[x];
    const PairMeasure base = pair_measure_from_haar(Q, nu, target);
    const auto& fiber = g.fiber(x);
    PairMeasure& out = mu.per_element[x];
    for (const auto& [classes, w] : base.weights()) {
      const PairMeasure cond = conditional(x, classes);
      if (!cond.is_probability()) {
        throw MeasureError("conditional for g=" + g.carrier().label(x) + " is not a probability measure");
      }
      for (const auto& [p, c] : cond.weights()) {
        if (qd.class_of[p.first] != classes.first || qd.class_of[p.second] != classes.second ||
            !std::binary_search(fiber.begin(), fiber.end(), p)) {
          throw MeasureError("conditional for g=" + g.carrier().label(x) + " charges a pair outside its preimage");
        }
        out.set(p, w * c);
      }
    }
  }
  return mu;
}

RelationalHaarSystem build_split(const RelationalGroupoid& g, const QuotientData& qd, const RightHaarSystem& nu,
                                 const std::vector<ClassMeasures>& tau_per_element) {
  if (tau_per_element.size() != g.size()) throw MeasureError("need one tau family per carrier element");
  for (Index x = 0; x < g.size(); ++x) {
    for (const auto& [cls, tau] : tau_per_element[x]) {
      if (!tau.is_probability()) throw MeasureError("tau is not a probability measure");
      for (const auto& [e, w] : tau.weights()) {
        if (qd.class_of.at(e) != cls) throw MeasureError("tau is not supported on its class");
      }
    }
  }
  return build_from_conditionals(g, qd, nu, [&](Index x, const Pair& classes) {
    const auto& fam = tau_per_element[x];
    auto a = fam.find(classes.first);
    auto b = fam.find(classes.second);
    if (a == fam.end() || b == fam.end()) {
      throw MeasureError("tau missing for a class occurring in the fiber of " + g.carrier().label(x));
    }
    PairMeasure prod;
    for (const auto& [h, wh] : a->second.weights()) {
      for (const auto& [k, wk] : b->second.weights()) prod.set({h, k}, wh * wk);
    }
    return prod;
  });
}

RelationalHaarSystem build_strongly_split(const RelationalGroupoid& g, const QuotientData& qd,
                                          const RightHaarSystem& nu, const ClassMeasures& tau) {
  return build_split(g, qd, nu, std::vector<ClassMeasures>(g.size(), tau));
}

ClassMeasures uniform_class_measures(const QuotientData& qd) {
  ClassMeasures tau;
  for (Index a = 0; a < qd.classes.size(); ++a) {
    tau[a] = PointMeasure::uniform(qd.classes[a], Rational(1, static_cast<unsigned long>(qd.classes[a].size())));
  }
  return tau;
}

}  // namespace relconv
