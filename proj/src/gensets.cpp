#include "lienil/gensets.hpp"

#include <functional>
#include <set>

namespace lienil {

namespace {

Poly gen_poly(const RingSpec& ring, GeneratorIndex i) { return Poly::generator(ring, i); }

// X u X^2 as elements: the generators followed by all ordered two-letter
// products (squares included).
std::vector<Poly> x_union_x2(const RingSpec& ring, std::size_t g) {
  std::vector<Poly> out;
  out.reserve(g + g * g);
  for (GeneratorIndex i = 0; i < g; ++i) out.push_back(gen_poly(ring, i));
  for (GeneratorIndex i = 0; i < g; ++i)
    for (GeneratorIndex j = 0; j < g; ++j)
      out.push_back(Poly::monomial(ring, Word{{i, j}}, scalar_from_long(ring, 1)));
  return out;
}

Poly normalize_scalar_multiple(const Poly& p) {
  if (p.is_zero()) return p;
  const RingSpec& ring = p.ring();
  const Scalar& leadc = p.terms().begin()->second;
  if (ring.is_field()) return poly_scalar_mul(scalar_invert(leadc, ring), p);
  if (leadc.value() < 0) return poly_neg(p);
  return p;
}

class Emitter {
 public:
  Emitter(std::vector<Poly>& out, const GensetOptions& opts) : out_(out), opts_(opts) {}

  void emit(Poly p) {
    if (opts_.dedup) {
      if (p.is_zero()) return;
      Poly key = normalize_scalar_multiple(p);
      std::vector<std::pair<Word, Scalar>> k;
      for (const auto& [w, c] : key.terms()) k.emplace_back(w, c);
      if (!seen_.insert(std::move(k)).second) return;
      out_.push_back(std::move(key));
    } else {
      out_.push_back(std::move(p));
    }
  }

 private:
  std::vector<Poly>& out_;
  const GensetOptions& opts_;
  std::set<std::vector<std::pair<Word, Scalar>>> seen_;
};

// Enumerates assignments of generator indices to nvars multilinear form
// variables, pruned by the optional multidegree budget (each variable
// consumes one occurrence of its generator).
void for_each_assignment(std::size_t nvars, std::size_t g, const GensetOptions& opts,
                         const std::function<void(const std::vector<GeneratorIndex>&)>& fn) {
  std::vector<GeneratorIndex> assign(nvars, 0);
  std::vector<std::uint32_t> used(g, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == nvars) {
      fn(assign);
      return;
    }
    for (GeneratorIndex i = 0; i < g; ++i) {
      if (opts.within) {
        if (i >= opts.within->size()) continue;
        if (used[i] + 1 > opts.within->exponents[i]) continue;
      }
      used[i]++;
      assign[v] = i;
      rec(v + 1);
      used[i]--;
    }
  };
  rec(0);
}

using FormBuilder = std::function<Poly(const RingSpec&, const std::vector<GeneratorIndex>&)>;

void instantiate_form(std::vector<Poly>& out, const RingSpec& ring, std::size_t g,
                      std::size_t nvars, const GensetOptions& opts, const FormBuilder& build) {
  Emitter em(out, opts);
  for_each_assignment(nvars, g, opts,
                      [&](const std::vector<GeneratorIndex>& a) { em.emit(build(ring, a)); });
}

Poly bracket_of_gens(const RingSpec& ring, std::initializer_list<GeneratorIndex> idx) {
  std::vector<Poly> args;
  for (auto i : idx) args.push_back(gen_poly(ring, i));
  return left_normed_commutator(std::span<const Poly>(args));
}

// [x_a, x_b][x_c, x_d] + [x_a, x_c][x_b, x_d]
Poly g_form(const RingSpec& ring, GeneratorIndex a, GeneratorIndex b, GeneratorIndex c,
            GeneratorIndex d) {
  return poly_add(poly_mul(bracket_of_gens(ring, {a, b}), bracket_of_gens(ring, {c, d})),
                  poly_mul(bracket_of_gens(ring, {a, c}), bracket_of_gens(ring, {b, d})));
}

MultiDegree poly_mdeg_or_zero(const Poly& p, std::size_t g) {
  MultiDegree mu = MultiDegree::zero(g);
  if (!p.is_zero()) p.is_homogeneous(g, &mu);
  return mu;
}

// Substitution budget adjusted for a fixed homogeneous factor s.
GensetOptions shrink_budget(const GensetOptions& opts, const Poly& s, std::size_t g,
                            bool* fits) {
  *fits = true;
  if (!opts.within) return opts;
  MultiDegree sd = poly_mdeg_or_zero(s, g);
  if (!opts.within->dominates(sd)) {
    *fits = false;
    return opts;
  }
  GensetOptions o = opts;
  o.within = *opts.within - sd;
  return o;
}

}  // namespace

std::vector<Poly> sn_generators(int n, std::size_t generator_count, const RingSpec& ring,
                                const GensetOptions& opts) {
  if (n < 2) throw std::invalid_argument("sn_generators: n must be >= 2");
  if (generator_count < 1) throw std::invalid_argument("sn_generators: need a generator");
  std::vector<Poly> out;
  Emitter em(out, opts);
  const std::vector<Poly> middle_pool = x_union_x2(ring, generator_count);

  std::vector<Poly> tuple;
  std::vector<std::uint32_t> used(generator_count, 0);

  auto budget_ok = [&](const Poly& p) {
    if (!opts.within) return true;
    MultiDegree pd = poly_mdeg_or_zero(p, generator_count);
    for (std::size_t i = 0; i < generator_count; ++i)
      if (used[i] + pd.exponents[i] > (i < opts.within->size() ? opts.within->exponents[i] : 0))
        return false;
    return true;
  };
  auto push_usage = [&](const Poly& p, int sign) {
    MultiDegree pd = poly_mdeg_or_zero(p, generator_count);
    for (std::size_t i = 0; i < generator_count; ++i)
      used[i] = static_cast<std::uint32_t>(used[i] + sign * static_cast<int>(pd.exponents[i]));
  };

  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      Poly b = left_normed_commutator(std::span<const Poly>(tuple));
      if (!b.is_zero()) em.emit(std::move(b));  // zero brackets always pruned here
      return;
    }
    const bool endpoint = (pos == 0 || pos == n - 1);
    const std::size_t pool = endpoint ? generator_count : middle_pool.size();
    for (std::size_t c = 0; c < pool; ++c) {
      const Poly& y = endpoint ? middle_pool[c] : middle_pool[c];
      if (!budget_ok(y)) continue;
      push_usage(y, +1);
      tuple.push_back(y);
      rec(pos + 1);
      tuple.pop_back();
      push_usage(y, -1);
    }
  };
  rec(0);
  return out;
}

mpz_class sn_raw_tuple_count(int n, std::size_t generator_count) {
  mpz_class g(static_cast<unsigned long>(generator_count));
  mpz_class middles = g + g * g;
  mpz_class count = g * g;
  for (int i = 0; i < n - 2; ++i) count *= middles;
  return count;
}

std::vector<Poly> latyshev_t3(std::size_t generator_count, const RingSpec& ring,
                              const GensetOptions& opts) {
  std::vector<Poly> out;
  instantiate_form(out, ring, generator_count, 3,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return bracket_of_gens(r, {a[0], a[1], a[2]});
                   });
  instantiate_form(out, ring, generator_count, 4,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return g_form(r, a[0], a[1], a[2], a[3]);
                   });
  return out;
}

std::vector<Poly> volichenko_t4(std::size_t generator_count, const RingSpec& ring,
                                const GensetOptions& opts) {
  std::vector<Poly> out;
  instantiate_form(out, ring, generator_count, 4,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return bracket_of_gens(r, {a[0], a[1], a[2], a[3]});
                   });
  instantiate_form(out, ring, generator_count, 5,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return poly_mul(bracket_of_gens(r, {a[0], a[1]}),
                                     bracket_of_gens(r, {a[2], a[3], a[4]}));
                   });
  instantiate_form(out, ring, generator_count, 6,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return poly_mul(g_form(r, a[0], a[1], a[2], a[3]),
                                     bracket_of_gens(r, {a[4], a[5]}));
                   });
  return out;
}

std::vector<Poly> integer_t4(std::size_t generator_count, const RingSpec& ring,
                             const GensetOptions& opts) {
  std::vector<Poly> out;
  instantiate_form(out, ring, generator_count, 4,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return bracket_of_gens(r, {a[0], a[1], a[2], a[3]});
                   });
  instantiate_form(out, ring, generator_count, 6,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return poly_mul(g_form(r, a[0], a[1], a[2], a[3]),
                                     bracket_of_gens(r, {a[4], a[5]}));
                   });
  instantiate_form(out, ring, generator_count, 6,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return poly_mul(bracket_of_gens(r, {a[0], a[1], a[2]}),
                                     bracket_of_gens(r, {a[3], a[4], a[5]}));
                   });
  instantiate_form(out, ring, generator_count, 5,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return poly_add(poly_mul(bracket_of_gens(r, {a[0], a[1], a[2]}),
                                              bracket_of_gens(r, {a[3], a[4]})),
                                     poly_mul(bracket_of_gens(r, {a[0], a[1], a[3]}),
                                              bracket_of_gens(r, {a[2], a[4]})));
                   });
  instantiate_form(out, ring, generator_count, 5,
                   opts, [](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                     return poly_add(poly_mul(bracket_of_gens(r, {a[0], a[1], a[2]}),
                                              bracket_of_gens(r, {a[3], a[4]})),
                                     poly_mul(bracket_of_gens(r, {a[0], a[3], a[2]}),
                                              bracket_of_gens(r, {a[1], a[4]})));
                   });
  return out;
}

namespace {

enum class WForm { SXX, SxXXX, SX_XXX, SX_XX, S_g };

std::vector<Poly> w_family(const std::vector<Poly>& S, std::size_t g,
                           const std::vector<WForm>& forms, const GensetOptions& opts) {
  std::vector<Poly> out;
  for (const Poly& s : S) {
    if (s.is_zero()) throw std::invalid_argument("w_forms: zero seed element");
    const RingSpec ring = s.ring();
    if (!s.is_homogeneous(g))
      throw std::invalid_argument("w_forms: inhomogeneous seed element");
    bool fits = true;
    GensetOptions local = shrink_budget(opts, s, g, &fits);
    if (!fits) continue;
    for (WForm f : forms) {
      switch (f) {
        case WForm::SXX:
          instantiate_form(out, ring, g, 2, local,
                           [&s](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                             return left_normed_commutator(
                                 {s, gen_poly(r, a[0]), gen_poly(r, a[1])});
                           });
          break;
        case WForm::SxXXX:
          instantiate_form(out, ring, g, 3, local,
                           [&s](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                             return poly_mul(s, bracket_of_gens(r, {a[0], a[1], a[2]}));
                           });
          break;
        case WForm::SX_XXX:
          instantiate_form(out, ring, g, 4, local,
                           [&s](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                             return poly_mul(commutator(s, gen_poly(r, a[0])),
                                             bracket_of_gens(r, {a[1], a[2], a[3]}));
                           });
          break;
        case WForm::SX_XX:
          instantiate_form(out, ring, g, 3, local,
                           [&s](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                             return poly_add(
                                 poly_mul(commutator(s, gen_poly(r, a[0])),
                                          bracket_of_gens(r, {a[1], a[2]})),
                                 poly_mul(commutator(s, gen_poly(r, a[1])),
                                          bracket_of_gens(r, {a[0], a[2]})));
                           });
          break;
        case WForm::S_g:
          instantiate_form(out, ring, g, 4, local,
                           [&s](const RingSpec& r, const std::vector<GeneratorIndex>& a) {
                             return poly_mul(s, g_form(r, a[0], a[1], a[2], a[3]));
                           });
          break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<Poly> w_forms(const std::vector<Poly>& S, std::size_t generator_count,
                          const GensetOptions& opts) {
  if (S.empty()) throw std::invalid_argument("w_forms: empty seed set");
  return w_family(S, generator_count,
                  {WForm::SXX, WForm::SxXXX, WForm::SX_XXX, WForm::SX_XX, WForm::S_g}, opts);
}

std::vector<Poly> corollary5_forms(const std::vector<Poly>& S, std::size_t generator_count,
                                   const GensetOptions& opts) {
  if (S.empty()) throw std::invalid_argument("corollary5_forms: empty seed set");
  return w_family(S, generator_count, {WForm::SXX, WForm::SxXXX, WForm::SX_XX, WForm::S_g},
                  opts);
}

std::vector<Poly> iprime_forms(const std::vector<Poly>& S, std::size_t generator_count,
                               const GensetOptions& opts) {
  if (S.empty()) throw std::invalid_argument("iprime_forms: empty seed set");
  return w_family(S, generator_count, {WForm::SXX, WForm::SX_XX}, opts);
}

std::pair<std::vector<Poly>, std::vector<Poly>> sn_variants(int n, std::size_t generator_count,
                                                            int k, const RingSpec& ring) {
  if (k < 2 || k > n - 1) throw std::invalid_argument("sn_variants: position k out of range");
  auto build = [&](int pos) {
    std::vector<Poly> out;
    std::vector<Poly> tuple;
    std::function<void(int)> rec = [&](int p) {
      if (p == n) {
        Poly b = left_normed_commutator(std::span<const Poly>(tuple));
        if (!b.is_zero()) out.push_back(std::move(b));
        return;
      }
      if (p == pos - 1) {
        for (GeneratorIndex i = 0; i < generator_count; ++i)
          for (GeneratorIndex j = 0; j < generator_count; ++j) {
            tuple.push_back(Poly::monomial(ring, Word{{i, j}}, scalar_from_long(ring, 1)));
            rec(p + 1);
            tuple.pop_back();
          }
      } else {
        for (GeneratorIndex i = 0; i < generator_count; ++i) {
          tuple.push_back(gen_poly(ring, i));
          rec(p + 1);
          tuple.pop_back();
        }
      }
    };
    rec(0);
    return out;
  };
  return {build(k), build(2)};
}

FamilySpec parse_family_spec(const std::string& text) {
  auto with_n = [&](FamilySpec::Name name, const std::string& prefix) {
    FamilySpec s;
    s.name = name;
    s.n = std::stoi(text.substr(prefix.size()));
    if (s.n < 2) throw std::invalid_argument("family " + text + ": n must be >= 2");
    return s;
  };
  if (text.rfind("Sn:", 0) == 0) return with_n(FamilySpec::Name::Sn, "Sn:");
  if (text.rfind("TnOracle:", 0) == 0) return with_n(FamilySpec::Name::TnOracle, "TnOracle:");
  if (text == "LatyshevT3") return {FamilySpec::Name::LatyshevT3, 3};
  if (text == "VolichenkoT4") return {FamilySpec::Name::VolichenkoT4, 4};
  if (text == "IntegerT4") return {FamilySpec::Name::IntegerT4, 4};
  if (text == "WForms") return {FamilySpec::Name::WForms, 0};
  if (text == "IPrimeForms") return {FamilySpec::Name::IPrimeForms, 0};
  throw std::invalid_argument("unknown ideal family: " + text);
}

std::string family_spec_name(const FamilySpec& spec) {
  switch (spec.name) {
    case FamilySpec::Name::Sn: return "Sn:" + std::to_string(spec.n);
    case FamilySpec::Name::TnOracle: return "TnOracle:" + std::to_string(spec.n);
    case FamilySpec::Name::LatyshevT3: return "LatyshevT3";
    case FamilySpec::Name::VolichenkoT4: return "VolichenkoT4";
    case FamilySpec::Name::IntegerT4: return "IntegerT4";
    case FamilySpec::Name::WForms: return "WForms";
    case FamilySpec::Name::IPrimeForms: return "IPrimeForms";
  }
  return "?";
}

}  // namespace lienil

#include "lienil/ideal.hpp"

namespace lienil {

std::vector<Poly> build_family(const FamilySpec& spec, const RingSpec& ring,
                               std::size_t generator_count,
                               const std::optional<MultiDegree>& within) {
  GensetOptions opts;
  opts.within = within;
  switch (spec.name) {
    case FamilySpec::Name::Sn:
      return sn_generators(spec.n, generator_count, ring, opts);
    case FamilySpec::Name::TnOracle:
      if (!within)
        throw std::invalid_argument("TnOracle is component-local: a multidegree is required");
      return tideal_generators(spec.n, ring, *within);
    case FamilySpec::Name::LatyshevT3:
      return latyshev_t3(generator_count, ring, opts);
    case FamilySpec::Name::VolichenkoT4:
      return volichenko_t4(generator_count, ring, opts);
    case FamilySpec::Name::IntegerT4:
      return integer_t4(generator_count, ring, opts);
    case FamilySpec::Name::WForms: {
      if (generator_count < 2) throw std::invalid_argument("WForms needs at least 2 generators");
      std::vector<Poly> seed{commutator(Poly::generator(ring, 0), Poly::generator(ring, 1))};
      return w_forms(seed, generator_count, opts);
    }
    case FamilySpec::Name::IPrimeForms: {
      if (generator_count < 2)
        throw std::invalid_argument("IPrimeForms needs at least 2 generators");
      std::vector<Poly> seed{commutator(Poly::generator(ring, 0), Poly::generator(ring, 1))};
      return iprime_forms(seed, generator_count, opts);
    }
  }
  throw std::invalid_argument("unknown family");
}

}  // namespace lienil
