#pragma once

#include "fisherce/preference.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fisherce {

struct ClassLabelSet {
    bool lex = false;
    bool add = false;
    bool rspn = false;
    bool satattop = false;
    bool submodular = false;
    bool leveled = false;
    bool strict = false;
    bool gen = true;

    /// Upper-case names of the set flags, in the order LEX, ADD, RSPN, SATATTOP,
    /// SUBMODULAR, LEVELED, STRICT, GEN.
    std::vector<std::string> labels() const;
    friend bool operator==(const ClassLabelSet&, const ClassLabelSet&) = default;
};

/// Item ranking (most preferred first) when the preference is lexicographic.
std::optional<std::vector<int>> lexicographic_order(const OrdinalPreference& pref);

bool is_leveled(const OrdinalPreference& pref);

/// Item ranking (most preferred first, singleton ties by index) when the
/// preference is responsive: S+j vs S+j' always orders like {j} vs {j'}.
std::optional<std::vector<int>> responsive_order(const OrdinalPreference& pref);

/// T ⊂ S with j outside S, T ~ T+j but S ≺ S+j.
struct SatiationViolation {
    Bundle smaller;
    Bundle larger;
    int item = 0;
};

std::optional<SatiationViolation> find_satiation_violation(const OrdinalPreference& pref);

/// Nonnegative per-item values whose sums represent `pref`, or nothing when no
/// such values exist (decided exactly).
std::optional<std::vector<Rational>> is_additive_representable(const OrdinalPreference& pref);

ClassLabelSet classify(const OrdinalPreference& pref);

/// Values 2^(j-1) for the j-th least preferred item. Throws PreconditionError
/// unless `pref` is lexicographic.
CardinalValuation lex_to_additive(const OrdinalPreference& pref);

/// Layer per indifference class (the bottom class is layer 0) and per bundle.
struct LayerAssignment {
    std::vector<int> by_class;
    std::vector<int> by_bundle;
};

LayerAssignment layer_assignment(const OrdinalPreference& pref);

/// v(S) = 1 - 2^-layer(S). Defined for every preference; submodular exactly when
/// the preference has no satiation violation.
CardinalValuation layer_valuation(const OrdinalPreference& pref);

struct SubmodularRepresentation {
    CardinalValuation valuation;
    LayerAssignment layers;
};

/// Throws PreconditionError naming the (T, S, j) triple when the preference
/// satiates below the top.
SubmodularRepresentation satattop_to_submodular(const OrdinalPreference& pref);

/// S ⊂ S' = S+k and j outside S' with v(j|S) < v(j|S').
struct SubmodularityViolation {
    Bundle smaller;
    Bundle larger;
    int item = 0;
};

std::optional<SubmodularityViolation> find_submodularity_violation(const CardinalValuation& v);
inline bool is_submodular_valuation(const CardinalValuation& v) { return !find_submodularity_violation(v); }

struct HierarchyWitness {
    std::string gap;          // e.g. "RSPN\\ADD"
    std::vector<std::string> items;
    OrdinalPreference preference;
    std::string member_of;    // the class it belongs to
    std::string excluded_from; // the next smaller class, empty for the LEX member
};

/// One preference per strict inclusion LEX ⊊ ADD ⊊ RSPN ⊊ SUBMODULAR ⊊ GEN, plus a
/// LEX member.
std::vector<HierarchyWitness> hierarchy_witnesses();

/// Reads a flag by label ("LEX", "ADD", ...). Throws InvalidInput for unknown labels.
bool has_label(const ClassLabelSet& set, const std::string& label);

} // namespace fisherce
