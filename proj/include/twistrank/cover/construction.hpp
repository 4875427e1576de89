#pragma once

#include "twistrank/exact/rl.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace twistrank::cover {

using exact::CycloElem;
using exact::MPoly;
using exact::Rat;
using exact::RingPtr;
using exact::RLElem;

class ConstructionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A rational point (a, b) of y^s = f(x).
struct BasePoint {
    Rat a;
    Rat b;
};

/// The cyclic-cover construction for y^s = f(x) with n copies.
///
/// Holds the base curve, the product C_n (relations y_i^s = f(x_i)), the
/// quotient V_n (relations z_i^s = f(x_1)^{s-1} f(x_{i+1}) with z_i expanded
/// to y_1^{s-1} y_{i+1}) and the twist f(x_1) z^s = f(x). All polynomials live
/// in `ring`; the ring's rewrite rules are read off `product_relations`.
struct ConstructionSpec {
    unsigned s = 0;
    unsigned r = 0;
    unsigned n = 0;
    bool strict = true;
    MPoly f;  // univariate in x
    RingPtr ring;
    std::vector<MPoly> product_relations;   // y_i^s - f(x_i), i = 1..n
    std::vector<MPoly> quotient_relations;  // (y_1^{s-1} y_{i+1})^s - f(x_1)^{s-1} f(x_{i+1}), i = 1..n-1
    MPoly twist_lhs;                        // f(x_1) * z^s
    MPoly twist_rhs;                        // f(x)
    std::optional<BasePoint> base_point;

    /// "(x_1^3 - x_1)*z^2 = x^3 - x"
    std::string twist_equation() const;
    /// "y_1^2 = x_1^3 - x_1"
    std::string product_relation_text(unsigned i) const;
    /// "z_1^2 = (x_1^3 - x_1)*(x_2^3 - x_2)"
    std::string quotient_relation_text(unsigned i) const;
    /// "y^2 = x^3 - x"
    std::string curve_equation() const;
};

/// Builds the construction. Throws ConstructionError when f is not squarefree,
/// when s < 2 or s exceeds deg f, when n < 1, or in strict mode when n < deg f.
ConstructionSpec build_construction(unsigned s, const MPoly& f, unsigned n, bool strict = true);
ConstructionSpec build_construction(unsigned s, const std::vector<Rat>& f_coeffs, unsigned n, bool strict = true);

/// Searches a = p/q with |p|, q <= bound in order of height for f(a) an s-th power.
std::optional<BasePoint> find_base_point(unsigned s, const MPoly& f, unsigned bound = 50);

/// Re-reduces e under the spec's relations.
RLElem normal_form(const RLElem& e, const ConstructionSpec& spec);

/// A K-rational point of the twist.
///
/// `x_var` / `z_index` record the point in V_n coordinates: x = x_{x_var}, and
/// z = z_{z_index} / f(x_1) (or z = 1 when z_index is empty).
struct FunctionFieldPoint {
    unsigned label = 0;
    RLElem x;
    RLElem z;
    unsigned x_var = 0;
    std::optional<unsigned> z_index;
};

/// P_1 = (x_1, 1) and P_{i+1} = (x_{i+1}, z_i / f(x_1)) for i = 1..n-1.
std::vector<FunctionFieldPoint> twist_points(const ConstructionSpec& spec);

struct TwistCheck {
    unsigned label = 0;
    bool zero = false;
    MPoly witness;  // numerator of twist_lhs - twist_rhs at the point, in normal form
};

TwistCheck verify_point_on_twist(const ConstructionSpec& spec, const FunctionFieldPoint& p);

struct RelationCheck {
    std::string relation;
    bool zero = false;
    MPoly witness;
};

/// Each quotient relation, with z_i expanded, reduces to zero in R_L.
std::vector<RelationCheck> verify_quotient_relations(const ConstructionSpec& spec);

struct GaloisCheck {
    std::string item;
    bool passed = false;
};

struct GaloisReport {
    std::vector<GaloisCheck> checks;
    bool all_passed() const;
};

/// gamma^s = id on generators, z_i and point coordinates invariant, y_1 -> zeta y_1.
GaloisReport check_galois(const ConstructionSpec& spec);

struct TrivializedPoint {
    unsigned label = 0;
    RLElem x;
    RLElem u;
    bool matches = false;  // (x, u) == (x_i, y_i)
};

struct TrivializationReport {
    bool equation_reduces = false;  // f(x_1) (u / y_1)^s - f(x) == u^s - f(x)
    RLElem reduced_equation;
    std::vector<TrivializedPoint> points;
    bool all_passed() const;
};

/// Substitutes z = u / y_1 and maps each point via u = z * y_1.
TrivializationReport trivialize_over_L(const ConstructionSpec& spec);

/// Genus of the smooth model of y^s = f(x), f squarefree of degree r.
/// Throws std::invalid_argument unless 2 <= s <= r.
unsigned genus(unsigned s, unsigned r);

unsigned prym_dimension(const ConstructionSpec& spec);

struct EndIdentityReport {
    unsigned s = 0;
    CycloElem sum;  // sum_{j<s} zeta^j
    bool vanishes = false;
};

EndIdentityReport end_identity_check(unsigned s);

struct RankBoundReport {
    unsigned n = 0;
    unsigned end_rank = 1;
    unsigned bound = 0;
    unsigned genus = 0;
    unsigned prym_dimension = 0;
    unsigned jacobian_power_dimension = 0;  // n * g, dimension of J^n
    std::string torsion;                    // "(Z/2)^2", "Z/2", "trivial", or "not computed"
};

/// Throws std::invalid_argument if end_rank < 1.
RankBoundReport rank_bound_report(const ConstructionSpec& spec, unsigned end_rank = 1);

enum class RelationKind { Product, Quotient, Twist };

/// Copy of `spec` with the sign of one relation's right-hand side flipped.
/// `index` is 1-based (ignored for the twist).
ConstructionSpec with_relation_sign_flipped(const ConstructionSpec& spec, RelationKind kind, unsigned index = 1);

}  // namespace twistrank::cover
