#pragma once

// Closed-form eigenvalue sequences: intervals, boxes, products with an
// interval, disjoint unions, disks, equilateral triangles and circular
// sectors, plus the lattice-counting route to high rectangle eigenvalues.

#include <cstddef>
#include <string>
#include <vector>

namespace speclab {

enum class SpectrumSource { analytic, fem, extrapolated };

enum class BoundaryCondition { neumann, dirichlet, mixed };

/// Ascending eigenvalues with multiplicity.
///
/// A spectrum is normally a prefix of an infinite sequence; `complete` marks
/// the rare finite case (e.g. the single value of a point) so merges can
/// certify values beyond the last listed entry.
struct Spectrum {
    std::vector<double> values;
    SpectrumSource source = SpectrumSource::analytic;
    std::string domain_label;
    bool complete = false;

    std::size_t count() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

/// The one-point spectrum {0}; the neutral element of product_spectrum.
Spectrum point_spectrum();

/// Interval of length D. Neumann: pi^2 k^2/D^2, k = 0..n-1. Dirichlet: k = 1..n.
/// Mixed (Dirichlet at one end): pi^2 (2k-1)^2 / (4 D^2), k = 1..n.
Spectrum segment_spectrum(double length, BoundaryCondition bc, std::size_t n);

/// n smallest values of pi^2 sum_i (k_i / l_i)^2 over the box with the given
/// sides (1 to 6 of them). Throws std::length_error when the enumeration
/// would exceed the memory budget.
Spectrum box_spectrum(const std::vector<double>& sides, BoundaryCondition bc, std::size_t n);

/// Spectrum of base x [0, ell] with Neumann conditions on the interval factor:
/// the n smallest of base[m] + pi^2 j^2 / ell^2. Throws std::invalid_argument
/// when base is too short to certify the n-th value.
Spectrum product_spectrum(const Spectrum& base, double ell, std::size_t n);

/// Merged spectra of disjoint domains; certified like product_spectrum.
Spectrum disjoint_union_spectrum(const std::vector<Spectrum>& parts, std::size_t n);

/// n smallest Neumann eigenvalues of the disk of radius R:
/// 0 and (j'_{m,s}/R)^2, doubly degenerate for m >= 1.
Spectrum disk_neumann_spectrum(double radius, std::size_t n);

/// First nontrivial Neumann eigenvalue of the disk: (j'_{1,1}/R)^2.
double disk_mu1(double radius);

/// First nontrivial Neumann eigenvalue of the equilateral triangle, 16 pi^2/(9 s^2).
double equilateral_triangle_mu1(double side);

/// First eigenvalue of a circular cone of radius R, Neumann on the flanks and
/// Dirichlet on the spherical cap: j_{d/2-1,1}^2 / R^2 for any opening angle.
double cone_tau1(double radius, int d);

/// First nontrivial Neumann eigenvalue of the planar sector with the given
/// opening angle and radius: min((j'_{pi/opening,1})^2, (j'_{0,1})^2) / R^2.
double sector_mu1(double radius, double opening);

/// k-th Neumann eigenvalue (mu_0 = 0) of the a x b rectangle by counting
/// lattice points below t and bisecting on t. Exact: the result is the lattice
/// value itself, with ties counted by multiplicity. k <= 10^7.
double rectangle_mu_k(double a, double b, long long k);

/// Number of Neumann eigenvalues of the a x b rectangle that are <= t.
long long rectangle_counting_function(double a, double b, double t);

/// (vol2/vol1)^{2/d}.
double weyl_ratio(double vol1, double vol2, int d);

}  // namespace speclab
