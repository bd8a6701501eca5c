#ifndef LIENIL_GENSETS_HPP
#define LIENIL_GENSETS_HPP

#include "lienil/freealg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lienil {

/// Substitution options shared by the family constructors. Zero results and
/// duplicates are kept by default so that reported counts match the raw
/// definitions; `within` restricts substitutions to a multidegree budget
/// (the emitted family restricted to that component is unchanged).
struct GensetOptions {
  bool dedup = false;
  std::optional<MultiDegree> within;
};

/// Brackets [y1, ..., yn] with y1, yn single generators and middle entries
/// ranging over X and all two-letter products X^2. Zero brackets are always
/// pruned here; scalar-multiple pruning is opt-in.
std::vector<Poly> sn_generators(int n, std::size_t generator_count, const RingSpec& ring,
                                const GensetOptions& opts = {});

/// Number of raw substitution tuples behind sn_generators: g^2 (g + g^2)^(n-2).
mpz_class sn_raw_tuple_count(int n, std::size_t generator_count);

/// [x1,x2,x3] and [x1,x2][x3,x4] + [x1,x3][x2,x4].
std::vector<Poly> latyshev_t3(std::size_t generator_count, const RingSpec& ring,
                              const GensetOptions& opts = {});

/// [x1,x2,x3,x4], [x1,x2][x3,x4,x5] and
/// ([x1,x2][x3,x4] + [x1,x3][x2,x4]) [x5,x6].
std::vector<Poly> volichenko_t4(std::size_t generator_count, const RingSpec& ring,
                                const GensetOptions& opts = {});

/// The six-type integer generating family: [x1,x2,x3,x4],
/// ([x1,x2][x3,x4] + [x1,x3][x2,x4]) [x5,x6], [x1,x2,x3][x4,x5,x6],
/// [x1,x2,x3][x4,x5] + [x1,x2,x4][x3,x5] and
/// [x1,x2,x3][x4,x5] + [x1,x4,x3][x2,x5].
std::vector<Poly> integer_t4(std::size_t generator_count, const RingSpec& ring,
                             const GensetOptions& opts = {});

/// The five displayed generator forms of the derived ideal W over s in S:
/// [s,x1,x2]; s[x1,x2,x3]; [s,x1][x2,x3,x4];
/// [s,x1][x2,x3] + [s,x2][x1,x3]; s([x1,x2][x3,x4] + [x1,x3][x2,x4]).
std::vector<Poly> w_forms(const std::vector<Poly>& S, std::size_t generator_count,
                          const GensetOptions& opts = {});

/// The four forms that suffice once 3 is invertible: w_forms without
/// [s,x1][x2,x3,x4].
std::vector<Poly> corollary5_forms(const std::vector<Poly>& S, std::size_t generator_count,
                                   const GensetOptions& opts = {});

/// Forms [s,x1,x2] and [s,x1][x2,x3] + [s,x2][x1,x3] only.
std::vector<Poly> iprime_forms(const std::vector<Poly>& S, std::size_t generator_count,
                               const GensetOptions& opts = {});

/// S: brackets with a single X^2 entry at position k (2 <= k <= n-1), all
/// other entries single generators; S': the same with k = 2.
std::pair<std::vector<Poly>, std::vector<Poly>> sn_variants(int n, std::size_t generator_count,
                                                            int k, const RingSpec& ring);

/// Family selector as accepted by the CLI --ideal flag:
/// "Sn:<n>", "TnOracle:<n>", "LatyshevT3", "VolichenkoT4", "IntegerT4",
/// "WForms", "IPrimeForms" ("@file" is resolved by the CLI itself).
struct FamilySpec {
  enum class Name {
    Sn,
    TnOracle,
    LatyshevT3,
    VolichenkoT4,
    IntegerT4,
    WForms,
    IPrimeForms,
  };
  Name name;
  int n = 0;
};

FamilySpec parse_family_spec(const std::string& text);
std::string family_spec_name(const FamilySpec& spec);

/// Instantiates a family over the given ring and generators. TnOracle is
/// component-local and therefore requires `within`. WForms / IPrimeForms use
/// the seed S = {[x1, x2]}.
std::vector<Poly> build_family(const FamilySpec& spec, const RingSpec& ring,
                               std::size_t generator_count,
                               const std::optional<MultiDegree>& within = std::nullopt);

}  // namespace lienil

#endif
