#pragma once

// Verification suites: uniqueness of nonzero minors, the zero-block
// combinatorics behind it, initial-ideal and Hilbert-function equality,
// codimension, the flat-family surrogate, and the two counterexamples.

#include "linkdet/hilbert.hpp"
#include "linkdet/idealgen.hpp"

#include <json.hpp>

#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace linkdet {

using json = nlohmann::json;

struct CheckResult {
  std::string name;
  bool pass = false;
  json witness;  // null unless the check failed
  json data;     // optional supporting values, present on pass or fail
  double millis = 0.0;
};

struct VerificationReport {
  std::optional<InstanceParams> instance;
  std::vector<CheckResult> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
  const CheckResult* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
  void append(const VerificationReport& other, const std::string& prefix = "") {
    for (auto c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  }
};

struct VerifyOptions {
  GroebnerOptions groebner{};
  OracleOptions oracle{};
  /// Skip the brute-force Hilbert oracle (monomial Hilbert tables only).
  bool skip_oracle = false;
};

namespace detail {

template <class Fn>
CheckResult timed_check(std::string name, Fn&& body) {
  CheckResult result;
  result.name = std::move(name);
  auto start = std::chrono::steady_clock::now();
  body(result);
  result.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

inline json minor_index_json(const MinorIndex& idx) { return json{{"rows", idx.rows}, {"cols", idx.cols}}; }

inline InstanceParams with_mode(InstanceParams p, SMode mode) {
  p.s_mode = mode;
  return p;
}

template <Field K>
std::vector<std::string> poly_strings(std::span<const Polynomial<K>> ps, const Layout& lay) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(p.to_string(lay));
  return out;
}

inline std::vector<std::string> monomial_strings(const MonomialIdeal& I, const Layout& lay) {
  std::vector<std::string> out;
  for (const auto& m : I.generators()) out.push_back(m.to_string(lay));
  return out;
}

/// Product x[i_w, j_perm(w)] over w.
inline Monomial permutation_monomial(const MinorIndex& idx, const std::vector<int>& perm, const Layout& lay) {
  Monomial m;
  for (std::size_t w = 0; w < perm.size(); ++w)
    m = m * Monomial::x(lay, idx.rows[w], idx.cols[static_cast<std::size_t>(perm[w])]);
  return m;
}

inline Monomial diagonal_monomial(const MinorIndex& idx, const Layout& lay) {
  std::vector<int> id(idx.rows.size());
  std::iota(id.begin(), id.end(), 0);
  return permutation_monomial(idx, id, lay);
}

// unique a in [1, n] with d - c_a < x <= d - c_{a-1}
inline int staircase_interval(int x, const InstanceParams& p) {
  for (int a = 1; a <= p.n; ++a)
    if (p.d - p.c_at(a) < x && x <= p.d - p.c_at(a - 1)) return a;
  throw std::logic_error("column outside the staircase");
}

template <Field K>
std::vector<SymbolicMatrix<K>> staircase_at_zero(const InstanceParams& p, const K& k) {
  auto p0 = with_mode(p, SMode::Zero);
  std::vector<SymbolicMatrix<K>> mats;
  for (int l = 1; l <= p.n; ++l) mats.push_back(build_A(l, p0, k));
  return mats;
}

}  // namespace detail

/// Outcome of the zero-block analysis for one minor position.
struct PqResult {
  bool pass = true;
  std::vector<int> p1, p2;        // indexed by l-1
  std::vector<int> nonvanishing;  // the l with det A'_l != 0
  std::string failure;
};

/// Zero-block shapes of the submatrices A'_l against the counts p_{1,l}, p_{2,l}.
template <Field K>
PqResult check_pq_combinatorics(const InstanceParams& p, const MinorIndex& idx,
                                std::span<const SymbolicMatrix<K>> staircase) {
  PqResult out;
  const int size = idx.size();
  const int m1 = idx.m1(p.r1), m2 = idx.m2(p.r1);
  auto fail = [&](const std::string& why) {
    if (out.pass) out.failure = why;
    out.pass = false;
  };
  for (int l = 1; l <= p.n; ++l) {
    int p1 = 0, p2 = 0;
    for (int j : idx.cols) {
      p1 += j > p.d - p.c_at(l - 1);
      p2 += j <= p.d - p.c_at(l);
    }
    out.p1.push_back(p1);
    out.p2.push_back(p2);
    const auto& a = staircase[static_cast<std::size_t>(l - 1)];
    for (int w = 0; w < size; ++w)
      for (int v = 0; v < size; ++v) {
        bool zero = a.at(idx.rows[static_cast<std::size_t>(w)], idx.cols[static_cast<std::size_t>(v)]).is_zero();
        bool expect = w < m1 ? v >= size - p1 : v < p2;
        if (zero != expect)
          fail("zero block shape differs at l=" + std::to_string(l) + " entry (" + std::to_string(w) + "," +
               std::to_string(v) + ")");
      }
    bool predicted = size - p1 >= m1 && size - p2 >= m2;
    bool actual = !minor(a, idx).is_zero();
    if (predicted != actual) fail("nonvanishing prediction wrong at l=" + std::to_string(l));
    if (actual) out.nonvanishing.push_back(l);
  }
  for (int l = 1; l + 1 <= p.n; ++l)
    if (out.p1[static_cast<std::size_t>(l)] + out.p2[static_cast<std::size_t>(l - 1)] != size)
      fail("p1(l+1) + p2(l) != r+1 at l=" + std::to_string(l));
  return out;
}

template <Field K>
PqResult check_pq_combinatorics(const InstanceParams& p, const MinorIndex& idx, const K& k) {
  auto mats = detail::staircase_at_zero(p, k);
  return check_pq_combinatorics(p, idx, std::span<const SymbolicMatrix<K>>(mats));
}

struct TermConditionResult {
  bool pass = true;
  int a = 0, b = 0;  // admissible range b <= l <= a
  std::string failure;
};

/// Termwise membership criteria for g and for det A'_l, checked against the polynomials.
template <Field K>
TermConditionResult check_term_conditions(const InstanceParams& p, const MinorIndex& idx,
                                          std::span<const SymbolicMatrix<K>> staircase, const Polynomial<K>& g) {
  TermConditionResult out;
  const Layout lay = p.layout();
  const K& k = g.field();
  const int size = idx.size();
  const int m1 = idx.m1(p.r1);
  auto fail = [&](const std::string& why) {
    if (out.pass) out.failure = why;
    out.pass = false;
  };
  auto col = [&](int w) { return idx.cols[static_cast<std::size_t>(w)]; };
  // positions m1-1 and m1 (0-based) bound the admissible chain indices
  out.a = m1 > 0 ? detail::staircase_interval(col(m1 - 1), p) : p.n;
  out.b = m1 < size ? detail::staircase_interval(col(m1), p) : 1;

  std::vector<Polynomial<K>> dets;
  for (int l = 1; l <= p.n; ++l) dets.push_back(minor(staircase[static_cast<std::size_t>(l - 1)], idx));
  for (int l = 1; l <= p.n; ++l) {
    bool in_range = out.b <= l && l <= out.a;
    if (in_range != !dets[static_cast<std::size_t>(l - 1)].is_zero())
      fail("admissible range [b,a] disagrees with nonvanishing at l=" + std::to_string(l));
  }

  std::vector<int> perm(static_cast<std::size_t>(size));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    const Monomial mono = detail::permutation_monomial(idx, perm, lay);
    auto sigma = [&](int w) { return col(perm[static_cast<std::size_t>(w)]); };
    bool in_g = true;
    for (int w = 0; w < size; ++w)
      in_g = in_g && (w < m1 ? sigma(w) <= p.d - p.c_at(out.a - 1) : sigma(w) > p.d - p.c_at(out.b));
    if (in_g != g.contains(mono)) fail("g membership criterion wrong for " + mono.to_string(lay));
    if (g.contains(mono)) {
      auto expected = permutation_sign(perm) > 0 ? k.one() : k.neg(k.one());
      if (!k.equal(g.coefficient(mono), expected)) fail("g coefficient is not the permutation sign");
    }
    for (int l = out.b; l <= out.a; ++l) {
      bool in_det = true;
      for (int w = 0; w < size; ++w)
        in_det = in_det && (w < m1 ? sigma(w) <= p.d - p.c_at(l - 1) : sigma(w) > p.d - p.c_at(l));
      if (in_det != dets[static_cast<std::size_t>(l - 1)].contains(mono))
        fail("det A'_l membership criterion wrong at l=" + std::to_string(l) + " for " + mono.to_string(lay));
      if (in_det != in_g) fail("the two criteria disagree at l=" + std::to_string(l) + " for " + mono.to_string(lay));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

template <Field K>
TermConditionResult check_term_conditions(const InstanceParams& p, const MinorIndex& idx, const K& k) {
  auto mats = detail::staircase_at_zero(p, k);
  return check_term_conditions(p, idx, std::span<const SymbolicMatrix<K>>(mats), gen_g(idx, p, k));
}

/// Every minor of every A_l is 0 or g; g occurs; g holds the diagonal term as its lex leader.
template <Field K>
CheckResult check_lemma_minors(const InstanceParams& p, std::span<const SymbolicMatrix<K>> staircase, const K& k) {
  return detail::timed_check("lemma_minors", [&](CheckResult& res) {
    const Layout lay = p.layout();
    res.pass = true;
    json attaining = json::array();
    json failures = json::array();
    for (const auto& idx : all_minor_indices(p)) {
      const auto g = gen_g(idx, p, k);
      std::vector<int> hits;
      for (int l = 1; l <= p.n; ++l) {
        auto m = minor(staircase[static_cast<std::size_t>(l - 1)], idx);
        if (m == g) hits.push_back(l);
        else if (!m.is_zero())
          failures.push_back({{"index", detail::minor_index_json(idx)}, {"l", l}, {"reason", "minor is neither 0 nor g"},
                              {"minor", m.to_string(lay)}, {"g", g.to_string(lay)}});
      }
      if (hits.empty())
        failures.push_back({{"index", detail::minor_index_json(idx)}, {"reason", "g attained by no l"}, {"g", g.to_string(lay)}});
      const Monomial diag = detail::diagonal_monomial(idx, lay);
      if (g.is_zero() || !g.contains(diag) || g.leading_monomial() != diag)
        failures.push_back({{"index", detail::minor_index_json(idx)}, {"reason", "diagonal term is not the leader of g"},
                            {"g", g.to_string(lay)}});
      attaining.push_back({{"index", detail::minor_index_json(idx)}, {"attaining", hits}});
    }
    res.data = {{"attaining", attaining}};
    if (!failures.empty()) {
      res.pass = false;
      res.witness = failures;
    }
  });
}

template <Field K>
CheckResult check_lemma_minors(const InstanceParams& p, const K& k) {
  auto mats = detail::staircase_at_zero(p, k);
  return check_lemma_minors(p, std::span<const SymbolicMatrix<K>>(mats), k);
}

/// Zero-block and termwise checks over every minor position, bundled as report entries.
template <Field K>
VerificationReport check_lemma_combinatorics(const InstanceParams& p, const K& k) {
  VerificationReport rep;
  rep.instance = p;
  auto mats = detail::staircase_at_zero(p, k);
  std::span<const SymbolicMatrix<K>> stair(mats);
  rep.checks.push_back(check_lemma_minors(p, stair, k));
  rep.checks.push_back(detail::timed_check("pq_combinatorics", [&](CheckResult& res) {
    res.pass = true;
    for (const auto& idx : all_minor_indices(p)) {
      auto r = check_pq_combinatorics(p, idx, stair);
      if (!r.pass) {
        res.pass = false;
        res.witness = {{"index", detail::minor_index_json(idx)}, {"reason", r.failure}};
        break;
      }
    }
  }));
  rep.checks.push_back(detail::timed_check("term_conditions", [&](CheckResult& res) {
    res.pass = true;
    for (const auto& idx : all_minor_indices(p)) {
      auto r = check_term_conditions(p, idx, stair, gen_g(idx, p, k));
      if (!r.pass) {
        res.pass = false;
        res.witness = {{"index", detail::minor_index_json(idx)}, {"a", r.a}, {"b", r.b}, {"reason", r.failure}};
        break;
      }
    }
  }));
  return rep;
}

namespace detail {

template <Field K>
json table_json(const HilbertTable& t) {
  return t.values;
}

// initial-ideal and Hilbert comparison valid at any point with R = k
template <Field K>
VerificationReport initial_ideals_at_field(const InstanceParams& p, const K& k, const VerifyOptions& opts) {
  VerificationReport rep;
  rep.instance = p;
  const Layout lay = p.layout();
  const int nv = p.num_vars();
  const int dmax = p.degree_bound;

  const auto ir = gen_Ir(p, k);
  const auto jr = gen_Jr(p, k);
  std::optional<GroebnerBasis<K>> gb_ir, gb_jr;
  MonomialIdeal in_ir, in_jr;

  rep.checks.push_back(timed_check("groebner_Jr_is_minors", [&](CheckResult& res) {
    gb_jr = buchberger(k, jr.generators, opts.groebner);
    in_jr = initial_ideal(*gb_jr);
    std::vector<Monomial> diag;
    for (const auto& idx : all_minor_indices(p)) diag.push_back(diagonal_monomial(idx, lay));
    res.pass = in_jr == MonomialIdeal(diag);
    res.data = {{"in_Jr", monomial_strings(in_jr, lay)}};
    if (!res.pass) res.witness = {{"expected_diagonals", monomial_strings(MonomialIdeal(diag), lay)}};
  }));
  rep.checks.push_back(timed_check("groebner_Ir", [&](CheckResult& res) {
    gb_ir = buchberger(k, ir.generators, opts.groebner);
    in_ir = initial_ideal(*gb_ir);
    res.pass = true;
    res.data = {{"generators", ir.size()}, {"gb_size", gb_ir->size()}, {"in_Ir", monomial_strings(in_ir, lay)}};
  }));
  rep.checks.push_back(timed_check("in_Jr_subset_in_Ir", [&](CheckResult& res) {
    auto w = in_jr.witness_not_in(in_ir);
    res.pass = !w;
    if (w) res.witness = {{"monomial", w->to_string(lay)}};
  }));
  rep.checks.push_back(timed_check("in_Ir_eq_in_Jr", [&](CheckResult& res) {
    res.pass = in_ir == in_jr;
    if (!res.pass) {
      auto w = in_ir.witness_not_in(in_jr);
      res.witness = {{"in_Ir_not_in_Jr", w ? w->to_string(lay) : ""}, {"in_Ir", monomial_strings(in_ir, lay)}};
    }
  }));
  rep.checks.push_back(timed_check("in_Ir_squarefree", [&](CheckResult& res) {
    res.pass = in_ir.squarefree();
    if (!res.pass) res.witness = {{"in_Ir", monomial_strings(in_ir, lay)}};
  }));
  rep.checks.push_back(timed_check("hilbert_tables_agree", [&](CheckResult& res) {
    auto mon_ir = hf_monomial(in_ir, nv, dmax);
    auto mon_jr = hf_monomial(in_jr, nv, dmax);
    res.data = {{"hf_in_Ir", mon_ir.values}, {"hf_in_Jr", mon_jr.values}};
    res.pass = mon_ir == mon_jr;
    if (!opts.skip_oracle) {
      auto or_ir = hf_oracle(k, ir.generators, nv, dmax, opts.oracle);
      auto or_jr = hf_oracle(k, jr.generators, nv, dmax, opts.oracle);
      res.data["oracle_Ir"] = or_ir.values;
      res.data["oracle_Jr"] = or_jr.values;
      res.pass = res.pass && or_ir == mon_ir && or_jr == mon_ir;
    }
    if (!res.pass) res.witness = res.data;
  }));
  return rep;
}

}  // namespace detail

/// Initial ideals and Hilbert functions of I_r against J_r.
template <Field K>
VerificationReport check_initial_ideals(const InstanceParams& p, const K& k, const VerifyOptions& opts = {}) {
  if (p.s_mode == SMode::T) {
    // the comparison is a statement over a field: check the two kinds of fibre
    VerificationReport rep;
    rep.instance = p;
    rep.append(check_initial_ideals(detail::with_mode(p, SMode::Zero), k, opts), "fiber0:");
    rep.append(check_initial_ideals(detail::with_mode(p, SMode::Unit), k, opts), "fiber1:");
    return rep;
  }
  auto rep = detail::initial_ideals_at_field(p, k, opts);
  const Layout lay = p.layout();
  const int nv = p.num_vars();

  if (p.s_mode == SMode::Zero) {
    // each link of the degeneration squeeze, separately
    const auto ir = gen_Ir(p, k);
    const auto jr = gen_Jr(p, k);
    const auto jrp = gen_JrPrime(p, k);
    rep.checks.push_back(detail::timed_check("Ir_generated_by_g", [&](CheckResult& res) {
      std::vector<Polynomial<K>> gs;
      for (const auto& idx : all_minor_indices(p)) gs.push_back(gen_g(idx, p, k));
      auto gset = make_ideal_basis(gs, Provenance::Custom);
      res.pass = ir.size() == gset.size() &&
                 std::all_of(ir.generators.begin(), ir.generators.end(), [&](const auto& f) {
                   return std::find(gset.generators.begin(), gset.generators.end(), f) != gset.generators.end();
                 });
      if (!res.pass) res.witness = {{"Ir", detail::poly_strings<K>(ir.generators, lay)}};
    }));
    rep.checks.push_back(detail::timed_check("g_in_JrPrime", [&](CheckResult& res) {
      res.pass = true;
      for (const auto& idx : all_minor_indices(p)) {
        auto g = gen_g(idx, p, k);
        if (std::find(jrp.generators.begin(), jrp.generators.end(), g) == jrp.generators.end()) {
          res.pass = false;
          res.witness = {{"index", detail::minor_index_json(idx)}, {"g", g.to_string(lay)}};
          break;
        }
      }
    }));
    rep.checks.push_back(detail::timed_check("hf_JrPrime_eq_hf_Jr", [&](CheckResult& res) {
      auto a = opts.skip_oracle ? hf_monomial(initial_ideal(buchberger(k, jrp.generators, opts.groebner)), nv, p.degree_bound)
                                : hf_oracle(k, jrp.generators, nv, p.degree_bound, opts.oracle);
      auto b = hf_monomial(initial_ideal(buchberger(k, jr.generators, opts.groebner)), nv, p.degree_bound);
      res.pass = a == b;
      res.data = {{"hf_JrPrime", a.values}, {"hf_Jr", b.values}};
      if (!res.pass) res.witness = res.data;
    }));
  } else {
    rep.checks.push_back(detail::timed_check("Ir_equals_minors_of_A1", [&](CheckResult& res) {
      const auto ir = gen_Ir(p, k);
      auto a1 = make_ideal_basis(all_minors(build_A(1, p, k), p.r + 1), Provenance::Custom);
      auto gb_a1 = buchberger(k, a1.generators, opts.groebner);
      auto gb_ir = buchberger(k, ir.generators, opts.groebner);
      res.pass = true;
      for (const auto& f : ir.generators)
        if (!gb_a1.ideal_contains(f)) {
          res.pass = false;
          res.witness = {{"not_in_A1_ideal", f.to_string(lay)}};
        }
      for (const auto& f : a1.generators)
        if (!gb_ir.ideal_contains(f)) {
          res.pass = false;
          res.witness = {{"not_in_Ir", f.to_string(lay)}};
        }
    }));
    rep.checks.push_back(detail::timed_check("rescaling_identity", [&](CheckResult& res) {
      // a genuinely nonunit-free scalar: s = 2 (3 in characteristic 2)
      const auto s = k.from_int(k.characteristic() == 2 ? 3 : 2);
      const auto tp = detail::with_mode(p, SMode::T);
      std::array<typename K::Elem, kSlots> factor;
      factor.fill(k.one());
      for (int i = 1; i <= p.rows(); ++i)
        for (int j = 1; j <= p.d; ++j) {
          int e = i <= p.r1 ? exp_e1(j, 1, p) : exp_e2(j, 1, p);
          factor[static_cast<std::size_t>(lay.slot(i, j))] = k.inv(k.pow(s, static_cast<std::uint64_t>(e)));
        }
      const auto generic = build_generic(p, k);
      res.pass = true;
      for (int l = 1; l <= p.n && res.pass; ++l) {
        const auto a = build_A(l, tp, k);
        for (const auto& idx : all_minor_indices(p)) {
          auto f = rescale_variables(substitute_t(minor(a, idx), s), factor);
          auto target = minor(generic, idx);
          // f must be a nonzero scalar multiple of the generic minor
          if (f.is_zero() || !(f.monic() == target.monic())) {
            res.pass = false;
            res.witness = {{"l", l}, {"index", detail::minor_index_json(idx)}, {"rescaled", f.to_string(lay)}};
            break;
          }
        }
      }
    }));
  }
  return rep;
}

/// num_vars - dim R/in(I_r) against (d - r)(r1 + rn - r).
template <Field K>
CheckResult check_codim(const InstanceParams& p, const K& k, const VerifyOptions& opts = {}) {
  return detail::timed_check("codim", [&](CheckResult& res) {
    if (p.s_mode == SMode::T) throw std::invalid_argument("check_codim expects s_mode zero or unit");
    auto in_ir = initial_ideal(buchberger(k, gen_Ir(p, k).generators, opts.groebner));
    int codim = p.num_vars() - krull_dim_monomial(in_ir, p.num_vars());
    res.pass = codim == p.expected_codim();
    res.data = {{"codim", codim}, {"expected", p.expected_codim()}};
    if (!res.pass) res.witness = res.data;
  });
}

/// Hilbert tables of I_r specialised at each t-value must coincide.
template <Field K>
CheckResult check_flat_family(const InstanceParams& p, const std::vector<std::int64_t>& fibers, const K& k,
                              const VerifyOptions& opts = {}) {
  return detail::timed_check("flat_family", [&](CheckResult& res) {
    if (p.s_mode != SMode::T) throw std::invalid_argument("check_flat_family expects s_mode t");
    const auto ir = gen_Ir(p, k);
    json tables = json::object();
    std::optional<HilbertTable> first;
    res.pass = true;
    for (auto v : fibers) {
      std::vector<Polynomial<K>> specialised;
      for (const auto& f : ir.generators) specialised.push_back(substitute_t(f, k.from_int(v)));
      auto fiber = make_ideal_basis(specialised, Provenance::Custom);
      auto table = hf_monomial(initial_ideal(buchberger(k, fiber.generators, opts.groebner)), p.num_vars(), p.degree_bound);
      tables[std::to_string(v)] = table.values;
      if (!first) first = table;
      else if (!(table == *first)) res.pass = false;
    }
    res.data = {{"tables", tables}};
    if (!res.pass) res.witness = res.data;
  });
}

/// d = 5, n = 4, c = (1, 3, 3), r1 = 1, rn = 2, r = 2: the running staircase example.
inline InstanceParams staircase_example() {
  InstanceParams p;
  p.d = 5;
  p.n = 4;
  p.r1 = 1;
  p.rn = 2;
  p.c = {1, 3, 3};
  p.r = 2;
  p.s_mode = SMode::Zero;
  p.field = FieldSpec::prime_field(32003);
  p.degree_bound = p.r + 3;
  return p;
}

/// The 2x3 generic matrix with r = 1.
inline InstanceParams two_by_three_instance() {
  InstanceParams p;
  p.d = 3;
  p.n = 1;
  p.r1 = 2;
  p.rn = 0;
  p.r = 1;
  p.s_mode = SMode::Zero;
  p.degree_bound = 4;
  return p;
}

/// staircase | degeneration (the same shape over k[t]) | perturbed-staircase | two-by-three
inline std::optional<InstanceParams> named_instance(const std::string& name) {
  if (name == "staircase" || name == "perturbed-staircase") return staircase_example();
  if (name == "degeneration") {
    auto p = staircase_example();
    p.s_mode = SMode::T;
    return p;
  }
  if (name == "two-by-three") return two_by_three_instance();
  return std::nullopt;
}

inline const std::vector<std::string>& named_instance_names() {
  static const std::vector<std::string> names{"staircase", "degeneration", "perturbed-staircase", "two-by-three"};
  return names;
}

/// The staircase of the basic instance with entry (1,3) of A_3 restored to x[1,3].
template <Field K>
std::vector<SymbolicMatrix<K>> perturbed_staircase(const K& k) {
  auto p = staircase_example();
  auto mats = detail::staircase_at_zero(p, k);
  mats[2].set(1, 3, Polynomial<K>::monomial(k, Monomial::x(p.layout(), 1, 3)));
  return mats;
}

/// Reproduces the two perturbations that break the conclusions.
template <Field K>
VerificationReport run_counterexamples(const K& k, const VerifyOptions& opts = {}) {
  VerificationReport rep;
  {
    const auto p = staircase_example();
    const Layout lay = p.layout();
    const MinorIndex last3{{1, 2, 3}, {3, 4, 5}};
    const auto mats = perturbed_staircase(k);
    const auto plain = detail::staircase_at_zero(p, k);
    rep.checks.push_back(detail::timed_check("perturbed_minor_disagrees", [&](CheckResult& res) {
      auto mod3 = minor(mats[2], last3);
      auto a2 = minor(mats[1], last3);
      auto expect = parse_polynomial(k, lay, "x[1,3]*x[2,4]*x[3,5] - x[1,3]*x[3,4]*x[2,5]");
      res.pass = mod3 == expect && !(mod3 == a2);
      res.data = {{"perturbed_A3_minor", mod3.to_string(lay)}, {"A2_minor", a2.to_string(lay)}};
      if (!res.pass) res.witness = res.data;
    }));
    rep.checks.push_back(detail::timed_check("difference_outside_in_Jr", [&](CheckResult& res) {
      auto diff = minor(mats[2], last3) - minor(mats[1], last3);
      auto expect = parse_polynomial(k, lay, "x[2,3]*x[1,4]*x[3,5] - x[3,3]*x[1,4]*x[2,5]");
      auto in_jr = initial_ideal(buchberger(k, gen_Jr(p, k).generators, opts.groebner));
      bool outside = std::none_of(diff.terms().begin(), diff.terms().end(),
                                  [&](const auto& t) { return in_jr.contains(t.mono); });
      res.pass = diff == expect && outside;
      res.data = {{"difference", diff.to_string(lay)}};
      if (!res.pass) res.witness = res.data;
    }));
    rep.checks.push_back(detail::timed_check("perturbed_lemma_fails_at_last_columns", [&](CheckResult& res) {
      auto lemma = check_lemma_minors(p, std::span<const SymbolicMatrix<K>>(mats), k);
      bool witnessed = false;
      if (!lemma.pass)
        for (const auto& w : lemma.witness)
          witnessed = witnessed || w["index"] == detail::minor_index_json(last3);
      res.pass = !lemma.pass && witnessed && lemma.witness.size() == 1;
      res.data = {{"lemma_witness", lemma.witness}};
      if (!res.pass) res.witness = res.data;
    }));
    rep.checks.push_back(detail::timed_check("unperturbed_control", [&](CheckResult& res) {
      auto lemma = check_lemma_minors(p, std::span<const SymbolicMatrix<K>>(plain), k);
      res.pass = lemma.pass && minor(plain[2], last3).is_zero();
      if (!res.pass) res.witness = lemma.witness;
    }));
  }
  {
    const auto p = two_by_three_instance();
    const Layout lay = p.layout();
    rep.checks.push_back(detail::timed_check("zeroed_generators_enlarge_initial_ideal", [&](CheckResult& res) {
      std::vector<Polynomial<K>> gens{parse_polynomial(k, lay, "x[1,1]*x[2,2]"), parse_polynomial(k, lay, "x[1,2]*x[2,3]"),
                                      parse_polynomial(k, lay, "x[1,1]*x[2,3] - x[2,1]*x[1,3]")};
      auto in_i = initial_ideal(buchberger(k, gens, opts.groebner));
      auto in_j = initial_ideal(buchberger(k, gen_Jr(p, k).generators, opts.groebner));
      auto witness = parse_polynomial(k, lay, "x[2,1]*x[2,2]*x[1,3]").leading_monomial();
      auto combo = gens[0].mul_term(Monomial::x(lay, 2, 3), k.one()) - gens[2].mul_term(Monomial::x(lay, 2, 2), k.one());
      res.pass = in_j.is_subset_of(in_i) && !(in_i == in_j) && in_i.contains(witness) && !in_j.contains(witness) &&
                 combo == Polynomial<K>::monomial(k, witness);
      res.data = {{"in_I", detail::monomial_strings(in_i, lay)}, {"in_J", detail::monomial_strings(in_j, lay)},
                  {"witness", witness.to_string(lay)}};
      if (!res.pass) res.witness = res.data;
    }));
  }
  return rep;
}

/// Every check applicable to the instance.
template <Field K>
VerificationReport verify_instance(const InstanceParams& p, const K& k, const VerifyOptions& opts = {},
                                   const std::vector<std::int64_t>& fibers = {0, 1, 2}) {
  p.validate();
  VerificationReport rep;
  rep.instance = p;
  rep.append(check_lemma_combinatorics(p, k));
  rep.append(check_initial_ideals(p, k, opts));
  if (p.s_mode != SMode::T) {
    rep.checks.push_back(check_codim(p, k, opts));
  } else {
    rep.checks.push_back(check_codim(detail::with_mode(p, SMode::Zero), k, opts));
    rep.checks.back().name = "fiber0:codim";
  }
  rep.checks.push_back(check_flat_family(detail::with_mode(p, SMode::T), fibers, k, opts));
  return rep;
}

}  // namespace linkdet
