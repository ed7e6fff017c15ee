#pragma once

#include <boost/rational.hpp>

#include <optional>
#include <string>
#include <vector>

#include "vdl/errors.hpp"

namespace vdl {

using Rat = boost::rational<long long>;

// Lebesgue exponent: a positive rational or +infinity (1/inf = 0)
struct Lexp {
    bool is_inf = false;
    Rat value{1};

    Lexp() = default;
    Lexp(Rat v) : value(v) {
        if (v <= 0) throw domain_error("Lexp: exponent must be positive");
    }
    Lexp(long long v) : Lexp(Rat(v)) {}
    static Lexp infinity() {
        Lexp e;
        e.is_inf = true;
        return e;
    }
    Rat inverse() const { return is_inf ? Rat(0) : Rat(value.denominator(), value.numerator()); }
    std::string str() const;
};

Rat parse_rational(const std::string& text); // "3/2" or "2"; never floats
Lexp parse_exponent(const std::string& text); // rational or "inf"
std::string rat_str(const Rat& r);

// lambda(s,q) = 2/s + 3/q
Rat lambda_sq(const Lexp& s, const Lexp& q);

// embedding exponent: 1/q = 1/r - 1/3, r in (1,3)
Rat sobolev_q_of_r(const Rat& r);

// 1/q' = 1 - 1/r_hat + beta/3
Rat q_prime_of(const Rat& r_hat, const Rat& beta);

// 1/q = 1/r_hat - beta/3
Rat riesz_q_of(const Rat& r_hat, const Rat& beta);

struct InterpolationWeights {
    Rat alpha, theta, gamma;       // unprimed triple, sums to 1
    Rat alpha_p, theta_p, gamma_p; // primed triple, sums to 1

    bool in_box() const;     // all six in [0,1]
    bool on_simplex() const; // both triples sum to 1
};

// 1/(q'r) = alpha/r + theta/2 + gamma/(3r); 1/r_hat = same with primes.
// Returns (q_prime_r, r_hat).
std::pair<Rat, Rat> interpolation_exponents(const Rat& r, const InterpolationWeights& w);

// beta(r, w) = (2/r)(alpha' + alpha r) + (3/2 - 1/r)(theta' + theta r) - 2 + 1/r
Rat beta_of(const Rat& r, const InterpolationWeights& w);

// The coupling constraints tie the primed weights to the unprimed ones:
//   theta' + theta r = 1,  alpha' + alpha r = r/2.
// Free parameters (alpha, theta); the rest follow from the simplex sums.
struct CoupledWeightFamily {
    Rat r;

    explicit CoupledWeightFamily(const Rat& r_);

    // weights from the free parameters, or nullopt if outside the box
    std::optional<InterpolationWeights> make(const Rat& alpha, const Rat& theta) const;
    bool contains(const InterpolationWeights& w) const; // exact constraint check
    InterpolationWeights natural() const;               // alpha=1/2, theta=0
    // deterministic sampler: first `count` feasible points of a denominator sweep
    std::vector<InterpolationWeights> sample(std::size_t count) const;
};

struct ExponentTuple {
    Rat r, beta, r_hat, q, q_prime;
    bool consistent = false;
    std::string str() const;
};

// full chain: interpolation exponents -> beta -> q', q; consistency means the
// conjugate-exponent relation reproduces q'r exactly
ExponentTuple build_tuple(const Rat& r, const InterpolationWeights& w);

struct ScanEntry {
    Rat r;
    std::vector<Rat> attainable_beta; // sorted, deduplicated, under the coupling constraints
    long long tuple_count = 0;        // feasible tuples enumerated
    bool chain_consistent = false;    // every tuple passed build_tuple consistency
    // without the coupling constraints (optional pass): attainable beta range
    std::optional<std::pair<Rat, Rat>> free_beta_range;
};

struct ScanReport {
    std::vector<ScanEntry> entries;
    std::vector<Rat> attainable_beta; // union over r
    std::string str() const;
};

// enumerate all weight tuples whose six entries are rationals with denominator
// <= denominator_bound (lowest terms), subject to box + simplex + coupling
// constraints; with_free_range also reports the beta range without the coupling
ScanReport feasibility_scan(const std::vector<Rat>& r_grid, int denominator_bound,
                            bool with_free_range = false);

enum class Region { strong, target_zone, weak_known, unknown };
std::string region_str(Region r);

// velocity criterion lambda = 2/s + 3/q: <=1 strong, (1,3/2) target zone,
// =3/2 weak-known, >3/2 unknown
Region classify_open_problem(const Lexp& s, const Lexp& q);

// vorticity criterion 2/s + 3/r: <=2 strong, (2,5/2) target zone, =5/2
// weak-known, >5/2 unknown
Region vorticity_region(const Lexp& s, const Lexp& r);

// strong/not-implied by the vorticity criterion 2/s + 3/r <= 2
bool strong_by_vorticity(const Lexp& s, const Lexp& r);

// integrability exponent paired with a direction-Holder exponent: r = 3/(beta+1)
Rat r_for_beta(const Rat& beta);

} // namespace vdl
