#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hadamard_frac/criterion.hpp"
#include "hadamard_frac/frac_kernels.hpp"
#include "hadamard_frac/test_functions.hpp"

namespace hfrac {

enum class ProfileTag { InverseWeight, GaussWeight, ExpDecay, Custom };
enum class Part { Real, Imaginary };

std::string to_string(ProfileTag tag);
ProfileTag profile_tag_from_string(const std::string& name);
std::string to_string(Part part);

/// Surface measure 2 pi^(N/2) / Gamma(N/2) of the unit sphere in R^N.
double sphere_area(int N);

/// x -> g(|x|) on R^N.
///
///   InverseWeight  g(r) = 1 / (r^(N-1) (1 + r^2))
///   GaussWeight    g(r) = r^(2-N) exp(-r^2)
///   ExpDecay       g(r) = exp(-r)
///   Custom         piecewise linear through (r_k, g_k); flat below r_0, power-law
///                  continuation past the last sample fitted to the last two samples.
class RadialProfile {
 public:
  static RadialProfile inverse_weight(int N, Part part = Part::Real);
  static RadialProfile gauss_weight(int N, Part part = Part::Real);
  static RadialProfile exp_decay(int N, Part part = Part::Real);
  static RadialProfile custom(std::vector<double> r, std::vector<double> g, int N,
                              Part part = Part::Real);
  /// Two-column CSV (r, g) with a header row and strictly increasing r.
  static RadialProfile from_csv(const std::string& path, int N, Part part = Part::Real);

  ProfileTag tag() const { return tag_; }
  int dimension() const { return N_; }
  Part part() const { return part_; }

  double value(double r) const;
  /// g(r) r^(N-1), with the named tags' cancellations done analytically.
  double radial_density(double r) const;
  /// Closed form of the integral over R^N for the named tags.
  std::optional<double> closed_form_total() const;

  const std::vector<double>& sample_radii() const { return r_; }

 private:
  RadialProfile(ProfileTag tag, int N, Part part);
  double tail_exponent() const;  // q in g ~ C r^-q past the last sample

  ProfileTag tag_;
  int N_;
  Part part_;
  std::vector<double> r_;
  std::vector<double> g_;
};

struct RadialIntegral {
  double value = 0.0;
  double error = 0.0;
  double r_max = 0.0;  // truncation radius (inf when the tail was added analytically)
  std::optional<double> closed_form;
};

/// int_{R^N} g(|x|) dx = |S^(N-1)| int_0^inf g(r) r^(N-1) dr. Throws DivergentIntegral when
/// the tail of a custom profile is not integrable.
RadialIntegral total_integral(const RadialProfile& rp, const QuadratureSpec& q = {});

/// int_{R^N} g(|x|) xi_R^ell(x) dx. The cutoff's dimension must match the profile's.
Approx cutoff_weighted_integral(const RadialProfile& rp, const CutoffParams& c,
                                const QuadratureSpec& q = {});

/// Complex initial value f = f1 + i f2 built from at most one profile per part.
struct InitialValue {
  std::optional<RadialProfile> real;
  std::optional<RadialProfile> imag;

  static InitialValue zero() { return {}; }
  /// int f1 and int f2 over R^N.
  std::pair<double, double> integrals(const QuadratureSpec& q = {}) const;
  /// Cutoff-weighted int f1 xi^ell and int f2 xi^ell.
  std::pair<double, double> cutoff_integrals(const CutoffParams& c,
                                             const QuadratureSpec& q = {}) const;
};

InitialValue make_initial_value(const RadialProfile& profile);

SignFunctionals sign_functionals(const ProblemParams& pp, const InitialValue& f,
                                 const QuadratureSpec& q = {});

}  // namespace hfrac
