#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ratioslab/common.hpp"
#include "ratioslab/rng.hpp"

namespace ratioslab {

enum class EnsembleKind { unitary, so_even, so_odd, usp };

// n is the number of free angles: unitary n x n, so_even 2n x 2n,
// so_odd (2n+1) x (2n+1), usp 2n x 2n.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::unitary;
    int n = 1;
};

const char* kind_name(EnsembleKind k);
EnsembleKind kind_from_name(const std::string& name);

// Joint eigenangle density on [0, pi]^n (normalized; empty products at n = 1
// make the orthogonal cases constant).  Not defined for the unitary case.
double weyl_density(const EnsembleSpec& spec, std::span<const double> angles);

// 1.5 x the grid-plus-refinement maximum of weyl_density; the accept-reject
// envelope.  Cached per spec.
double sup_estimate(const EnsembleSpec& spec);

// One draw of the n free angles, sorted ascending.  Unitary: independent
// uniforms on [0, 2pi).  Others: accept-reject with a uniform proposal on
// (0, pi)^n against the sup_estimate envelope.
std::vector<double> sample_eigenangles(const EnsembleSpec& spec, SplitMix64& rng);

// Full unit-circle spectrum of one draw: +-theta_i for so/usp (plus the
// forced angle 0 for so_odd), the angles as drawn for unitary.
std::vector<double> full_spectrum(const EnsembleSpec& spec, const std::vector<double>& draw);

// Lowest angle (mod 2pi, zero counted) among all pairwise sums of two
// independent spectra; the tensor-product statistic.
double kronecker_lowest_angle(const EnsembleSpec& a, const EnsembleSpec& b, SplitMix64& rng,
                              bool exclude_exact_zeros = false);

struct AngleSampleSet {
    EnsembleSpec spec_a;
    std::optional<EnsembleSpec> spec_b;  // engaged for Kronecker pairs
    std::vector<double> samples;         // lowest angles, in [0, 2pi)
    u64 seed = 0;
    i64 count() const { return static_cast<i64>(samples.size()); }
};

// Lowest free angle of single-ensemble draws (draw index = stream index).
AngleSampleSet sample_lowest_angles(const EnsembleSpec& spec, i64 count, u64 seed);

// Lowest angle of Kronecker-product spectra.
AngleSampleSet sample_kron_lowest_angles(const EnsembleSpec& a, const EnsembleSpec& b, i64 count,
                                         u64 seed, bool exclude_exact_zeros = false);

struct Histogram {
    std::vector<double> edges;  // bin_count + 1 ascending edges from 0
    std::vector<i64> counts;
    i64 total = 0;
};

Histogram make_histogram(std::span<const double> samples, int bin_count);

// two-sample Kolmogorov-Smirnov statistic via sorted merge
double ks_statistic(const AngleSampleSet& a, const AngleSampleSet& b);
double ks_statistic(std::span<const double> a, std::span<const double> b);

}  // namespace ratioslab
