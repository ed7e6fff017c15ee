#include "vdl/exponents.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace vdl {

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << r.numerator();
    if (r.denominator() != 1) os << "/" << r.denominator();
    return os.str();
}

std::string Lexp::str() const { return is_inf ? "inf" : rat_str(value); }

Rat parse_rational(const std::string& text) {
    auto fail = [&] { throw usage_error("not a rational: '" + text + "'"); };
    if (text.empty()) fail();
    const auto slash = text.find('/');
    auto parse_int = [&](const std::string& s) -> long long {
        if (s.empty()) fail();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) fail();
        for (std::size_t j = i; j < s.size(); ++j)
            if (!std::isdigit(static_cast<unsigned char>(s[j]))) fail();
        try {
            return std::stoll(s);
        } catch (const std::exception&) {
            fail();
        }
        return 0;
    };
    if (slash == std::string::npos) return Rat(parse_int(text));
    const long long num = parse_int(text.substr(0, slash));
    const long long den = parse_int(text.substr(slash + 1));
    if (den == 0) fail();
    return Rat(num, den);
}

Lexp parse_exponent(const std::string& text) {
    if (text == "inf" || text == "infinity") return Lexp::infinity();
    return Lexp(parse_rational(text));
}

Rat lambda_sq(const Lexp& s, const Lexp& q) { return 2 * s.inverse() + 3 * q.inverse(); }

Rat sobolev_q_of_r(const Rat& r) {
    if (!(r > 1 && r < 3)) throw domain_error("sobolev_q_of_r: r outside (1,3)");
    return 3 * r / (3 - r);
}

Rat q_prime_of(const Rat& r_hat, const Rat& beta) {
    const Rat inv = 1 - Rat(r_hat.denominator(), r_hat.numerator()) + beta / 3;
    if (inv <= 0) throw domain_error("q_prime_of: nonpositive reciprocal");
    return Rat(inv.denominator(), inv.numerator());
}

Rat riesz_q_of(const Rat& r_hat, const Rat& beta) {
    const Rat inv = Rat(r_hat.denominator(), r_hat.numerator()) - beta / 3;
    if (inv <= 0) throw domain_error("riesz_q_of: nonpositive reciprocal");
    return Rat(inv.denominator(), inv.numerator());
}

bool InterpolationWeights::in_box() const {
    for (const Rat& w : {alpha, theta, gamma, alpha_p, theta_p, gamma_p})
        if (w < 0 || w > 1) return false;
    return true;
}

bool InterpolationWeights::on_simplex() const {
    // keep == operands both Rat: boost 1.74's reversed-operand == helpers
    // self-recurse under C++20 operator rewriting when one side is an int
    return alpha + theta + gamma == Rat(1) && alpha_p + theta_p + gamma_p == Rat(1);
}

std::pair<Rat, Rat> interpolation_exponents(const Rat& r, const InterpolationWeights& w) {
    if (!(r > 1)) throw domain_error("interpolation_exponents: r must exceed 1");
    const Rat inv_r(r.denominator(), r.numerator());
    const Rat inv_qpr = w.alpha * inv_r + w.theta / 2 + w.gamma * inv_r / 3;
    const Rat inv_rhat = w.alpha_p * inv_r + w.theta_p / 2 + w.gamma_p * inv_r / 3;
    if (inv_qpr <= 0 || inv_rhat <= 0)
        throw domain_error("interpolation_exponents: degenerate weights");
    return {Rat(inv_qpr.denominator(), inv_qpr.numerator()),
            Rat(inv_rhat.denominator(), inv_rhat.numerator())};
}

Rat beta_of(const Rat& r, const InterpolationWeights& w) {
    const Rat inv_r(r.denominator(), r.numerator());
    return 2 * inv_r * (w.alpha_p + w.alpha * r) +
           (Rat(3, 2) - inv_r) * (w.theta_p + w.theta * r) - 2 + inv_r;
}

CoupledWeightFamily::CoupledWeightFamily(const Rat& r_) : r(r_) {
    if (!(r > 1 && r <= 2)) throw domain_error("CoupledWeightFamily: r outside (1,2]");
}

std::optional<InterpolationWeights> CoupledWeightFamily::make(const Rat& alpha,
                                                              const Rat& theta) const {
    InterpolationWeights w;
    w.alpha = alpha;
    w.theta = theta;
    w.gamma = 1 - alpha - theta;
    w.alpha_p = r / 2 - alpha * r;
    w.theta_p = 1 - theta * r;
    w.gamma_p = 1 - w.alpha_p - w.theta_p;
    if (!w.in_box()) return std::nullopt;
    // the final mapping step needs 1/q = 1/r_hat - beta/3 > 0; on the box
    // boundary r_hat can reach 3/beta, where the image exponent degenerates
    const auto [qpr, rhat] = interpolation_exponents(r, w);
    (void)qpr;
    if (!(beta_of(r, w) * rhat < 3)) return std::nullopt;
    return w;
}

bool CoupledWeightFamily::contains(const InterpolationWeights& w) const {
    if (!(w.in_box() && w.on_simplex() && w.theta_p + w.theta * r == Rat(1) &&
          w.alpha_p + w.alpha * r == r / 2))
        return false;
    const auto [qpr, rhat] = interpolation_exponents(r, w);
    (void)qpr;
    return beta_of(r, w) * rhat < 3;
}

InterpolationWeights CoupledWeightFamily::natural() const {
    auto w = make(Rat(1, 2), Rat(0));
    if (!w) throw domain_error("CoupledWeightFamily: natural point infeasible");
    return *w;
}

std::vector<InterpolationWeights> CoupledWeightFamily::sample(std::size_t count) const {
    std::vector<InterpolationWeights> out;
    std::set<std::pair<Rat, Rat>> seen;
    for (long long den = 1; out.size() < count && den <= 4096; ++den)
        for (long long a = 0; a <= den && out.size() < count; ++a)
            for (long long t = 0; t <= den && out.size() < count; ++t) {
                const Rat alpha(a, den), theta(t, den);
                if (!seen.insert({alpha, theta}).second) continue;
                if (auto w = make(alpha, theta)) out.push_back(*w);
            }
    return out;
}

std::string ExponentTuple::str() const {
    std::ostringstream os;
    os << "(" << rat_str(r) << ", " << rat_str(beta) << ", " << rat_str(r_hat) << ", "
       << rat_str(q) << ", " << rat_str(q_prime) << ")"
       << (consistent ? "" : " [inconsistent]");
    return os.str();
}

ExponentTuple build_tuple(const Rat& r, const InterpolationWeights& w) {
    ExponentTuple t;
    t.r = r;
    const auto [qpr, rhat] = interpolation_exponents(r, w);
    t.r_hat = rhat;
    t.beta = beta_of(r, w);
    t.q = riesz_q_of(rhat, t.beta);
    t.q_prime = qpr / r;
    t.consistent = (q_prime_of(rhat, t.beta) == t.q_prime);
    return t;
}

namespace {

// all rationals in [0,1] with denominator <= bound, lowest terms (Farey sequence)
std::vector<Rat> farey(int bound) {
    std::vector<Rat> out;
    out.emplace_back(0);
    for (long long den = 1; den <= bound; ++den)
        for (long long num = 1; num <= den; ++num)
            if (std::gcd(num, den) == 1) out.emplace_back(num, den);
    std::sort(out.begin(), out.end());
    return out;
}

bool denominator_within(const Rat& x, long long bound) { return x.denominator() <= bound; }

} // namespace

ScanReport feasibility_scan(const std::vector<Rat>& r_grid, int denominator_bound,
                            bool with_free_range) {
    if (denominator_bound < 1) throw domain_error("feasibility_scan: bound must be >= 1");
    ScanReport report;
    const std::vector<Rat> grid_values = farey(denominator_bound);
    std::set<Rat> global;
    for (const Rat& r : r_grid) {
        CoupledWeightFamily family(r);
        ScanEntry entry;
        entry.r = r;
        entry.chain_consistent = true;
        std::set<Rat> betas;
        for (const Rat& alpha : grid_values)
            for (const Rat& theta : grid_values) {
                auto w = family.make(alpha, theta);
                if (!w) continue;
                // a tuple belongs to the enumeration only if every weight is a
                // bounded-denominator rational
                bool bounded = true;
                for (const Rat& x : {w->gamma, w->alpha_p, w->theta_p, w->gamma_p})
                    bounded = bounded && denominator_within(x, denominator_bound);
                if (!bounded) continue;
                ++entry.tuple_count;
                betas.insert(beta_of(r, *w));
                entry.chain_consistent =
                    entry.chain_consistent && build_tuple(r, *w).consistent;
            }
        entry.attainable_beta.assign(betas.begin(), betas.end());
        global.insert(betas.begin(), betas.end());

        if (with_free_range) {
            // no coupling: unprimed and primed triples vary independently
            std::vector<std::pair<Rat, Rat>> triples;
            for (const Rat& a : grid_values)
                for (const Rat& t : grid_values) {
                    const Rat g = 1 - a - t;
                    if (g < 0 || !denominator_within(g, denominator_bound)) continue;
                    triples.emplace_back(a, t);
                }
            std::optional<std::pair<Rat, Rat>> range;
            for (const auto& [a, t] : triples)
                for (const auto& [ap, tp] : triples) {
                    InterpolationWeights w{a, t, 1 - a - t, ap, tp, 1 - ap - tp};
                    const Rat b = beta_of(r, w);
                    if (!range)
                        range = {b, b};
                    else {
                        range->first = std::min(range->first, b);
                        range->second = std::max(range->second, b);
                    }
                }
            entry.free_beta_range = range;
        }
        report.entries.push_back(std::move(entry));
    }
    report.attainable_beta.assign(global.begin(), global.end());
    return report;
}

std::string ScanReport::str() const {
    std::ostringstream os;
    for (const ScanEntry& e : entries) {
        os << "r=" << rat_str(e.r) << ": " << e.tuple_count << " feasible tuples, beta in {";
        for (std::size_t i = 0; i < e.attainable_beta.size(); ++i)
            os << (i ? ", " : "") << rat_str(e.attainable_beta[i]);
        os << "}" << (e.chain_consistent ? "" : " [chain inconsistency]");
        if (e.free_beta_range)
            os << ", unconstrained beta range [" << rat_str(e.free_beta_range->first) << ", "
               << rat_str(e.free_beta_range->second) << "]";
        os << "\n";
    }
    os << "attainable beta under the coupling constraints: {";
    for (std::size_t i = 0; i < attainable_beta.size(); ++i)
        os << (i ? ", " : "") << rat_str(attainable_beta[i]);
    os << "}\n";
    return os.str();
}

std::string region_str(Region r) {
    switch (r) {
    case Region::strong: return "strong";
    case Region::target_zone: return "target-zone";
    case Region::weak_known: return "weak-known";
    case Region::unknown: return "unknown";
    }
    return "?";
}

Region classify_open_problem(const Lexp& s, const Lexp& q) {
    const Rat lam = lambda_sq(s, q);
    if (lam <= 1) return Region::strong;
    if (lam < Rat(3, 2)) return Region::target_zone;
    if (lam == Rat(3, 2)) return Region::weak_known;
    return Region::unknown;
}

Region vorticity_region(const Lexp& s, const Lexp& r) {
    const Rat v = lambda_sq(s, r);
    if (v <= 2) return Region::strong;
    if (v < Rat(5, 2)) return Region::target_zone;
    if (v == Rat(5, 2)) return Region::weak_known;
    return Region::unknown;
}

bool strong_by_vorticity(const Lexp& s, const Lexp& r) {
    return lambda_sq(s, r) <= 2;
}

Rat r_for_beta(const Rat& beta) {
    if (beta <= -1) throw domain_error("r_for_beta: beta must exceed -1");
    return 3 / (beta + 1);
}

} // namespace vdl
