#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgp/linalg.hpp"
#include "cgp/qscalars.hpp"

namespace cgp {

/// A class in G = C / 2Z, stored with real part reduced into [0, 2).
class Degree {
public:
    Degree() = default;
    explicit Degree(Scalar g);
    Scalar value() const { return g_; }
    /// The class lies in X = Z / 2Z.
    bool is_critical(double tol) const;
    bool equals(const Degree& other, double tol) const;
    Degree operator+(const Degree& o) const { return Degree(g_ + o.g_); }
    Degree operator-(const Degree& o) const { return Degree(g_ - o.g_); }
    Degree operator-() const { return Degree(-g_); }

private:
    Scalar g_{0.0, 0.0};
};

/// True when z is congruent to 0 modulo 2 (within tol).
bool is_zero_mod2(Scalar z, double tol);

/// A generating color: a typical simple V_alpha or a one-dimensional sigma(k).
struct Color {
    enum class Kind { Typical, Sigma };
    Kind kind = Kind::Sigma;
    Scalar alpha{0.0, 0.0};  // highest weight, Typical only
    long k = 0;              // weight, Sigma only

    static Color typical(Scalar a) { return {Kind::Typical, a, 0}; }
    static Color sigma(long kk) { return {Kind::Sigma, {0.0, 0.0}, kk}; }
    bool is_typical() const { return kind == Kind::Typical; }
    /// Degree of the colored (positively oriented) object.
    Scalar degree() const { return is_typical() ? alpha : Scalar(static_cast<double>(k), 0.0); }
    bool same_as(const Color& o, double tol) const;
    std::string describe() const;
};

struct SignedColor {
    int sign = +1;  // +1 for V, -1 for V*
    Color color;
};
using ObjectWord = std::vector<SignedColor>;

/// Concrete weight module: weight basis and generator actions.
struct WeightModule {
    int dim = 0;
    std::vector<Scalar> weights;
    Matrix H, E, F, K, Kinv;
    Degree degree;
};

/// Formal linear combination of colors of a common degree (Kirby colors).
struct FormalColorSum {
    std::vector<std::pair<Scalar, Color>> terms;
    Degree degree;
};

/// The constants attached to a relative modular category at level r.
struct InvariantConstants {
    Scalar delta_minus, delta_plus, D, eta, delta, zeta;
    int z_mod_zplus = 1;
};

// ---- typicality, modules ----------------------------------------------------

/// V_alpha (dimension r/2) is simple and projective.
bool is_typical(const ScalarContext& ctx, Scalar alpha);
WeightModule typical_module(const ScalarContext& ctx, Scalar alpha);
WeightModule sigma_module(const ScalarContext& ctx, long k);
WeightModule color_module(const ScalarContext& ctx, const Color& c);
WeightModule dual_module(const ScalarContext& ctx, const WeightModule& v);
WeightModule tensor_module(const WeightModule& a, const WeightModule& b);
WeightModule signed_module(const ScalarContext& ctx, const SignedColor& sc);
/// Tensor product of the letters of a word; the empty word gives the unit.
WeightModule realize(const ScalarContext& ctx, const ObjectWord& word);

/// Largest deviation of the five algebra relations on v (0 means exact).
struct RelationResiduals {
    double k_is_q_to_h = 0, h_e = 0, h_f = 0, e_f = 0, nilpotent = 0;
    double worst() const;
};
RelationResiduals relation_residuals(const ScalarContext& ctx, const WeightModule& v);

// ---- ribbon structure ---------------------------------------------------------

/// Diagonal of the pivot K^{1-r/2} on v.  On integer weights this agrees with
/// K^{r/2+1}; on complex weights only K^{1-r/2} makes left and right traces agree.
std::vector<Scalar> pivot_diagonal(const ScalarContext& ctx, const WeightModule& v);
/// c_{V,W} : V (x) W -> W (x) V
Matrix braiding(const ScalarContext& ctx, const WeightModule& v, const WeightModule& w);
/// c_{V,W}^{-1} : W (x) V -> V (x) W
Matrix braiding_inverse(const ScalarContext& ctx, const WeightModule& v, const WeightModule& w);

enum class Duality { EvLeft, CoevLeft, EvRight, CoevRight };
/// ev_left: V* (x) V -> 1, coev_left: 1 -> V (x) V*,
/// ev_right: V (x) V* -> 1, coev_right: 1 -> V* (x) V.
/// `v` is the module V; the dual is realized from it.
Matrix duality_map(const ScalarContext& ctx, const WeightModule& v, Duality flavor);

/// theta_V via (id (x) ev_right)(c_{V,V} (x) id)(id (x) coev_left).
Matrix twist(const ScalarContext& ctx, const WeightModule& v);

/// Right partial trace over the last `traced` factor (dimension and pivot given).
Matrix partial_trace_right(const Matrix& f, const std::vector<Scalar>& pivot_last);
/// Left partial trace over the first factor.
Matrix partial_trace_left(const Matrix& f, const std::vector<Scalar>& pivot_first);

// ---- Hom spaces, modified trace, Kirby colors ----------------------------------

/// Basis of intertwiners src -> dst (possibly empty).
std::vector<Matrix> hom_basis(const ScalarContext& ctx, const WeightModule& src,
                              const WeightModule& dst);
std::vector<Matrix> hom_basis(const ScalarContext& ctx, const ObjectWord& src,
                              const ObjectWord& dst);

/// Modified dimension d(V_alpha).
Scalar modified_dimension(const ScalarContext& ctx, Scalar alpha);

/// Modified trace of an endomorphism of realize(word).
Scalar modified_trace(const ScalarContext& ctx, const ObjectWord& word, const Matrix& f);

/// Categorical dimension of sigma(k), i.e. q^{(1-r/2)k} (equal to q^{(r/2+1)k} for integer k).
Scalar sigma_dimension(const ScalarContext& ctx, long k);
/// |Z / Z_+|, computed from dim sigma(rbar).
int z_mod_zplus(const ScalarContext& ctx);

/// Representatives of typical simples of degree g modulo sigma(Z).
std::vector<Scalar> index_set(const ScalarContext& ctx, const Degree& g);
/// Omega_g as a formal sum of colors.
FormalColorSum kirby_color(const ScalarContext& ctx, const Degree& g);

}  // namespace cgp
