#include "bdbgeo/airy.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "bdbgeo/errors.hpp"

namespace bdbgeo {

namespace {

constexpr long double kPi = 3.14159265358979323846264338327950288L;
constexpr long double kSqrtPi = 1.77245385090551602729816748334114518L;

// Ai(0) = 3^{-2/3}/Gamma(2/3), Ai'(0) = -3^{-1/3}/Gamma(1/3).
constexpr long double kAi0 = 0.35502805388781723926006318600418317640L;
constexpr long double kAip0 = 0.25881940379280679840518356018920396348L;

// Maclaurin series in long double.  The two auxiliary series
//   f = sum a_k x^{3k},  g = sum b_k x^{3k+1}
// satisfy t_{k+1} = t_k x^3/((3k+2)(3k+3)) and s_{k+1} = s_k x^3/((3k+3)(3k+4)).
void series_ld(long double x, long double& ai, long double& aip) {
    if (x == 0.0L) {
        ai = kAi0;
        aip = -kAip0;
        return;
    }
    const long double x3 = x * x * x;
    long double t = 1.0L;      // f term, t_k = a_k x^{3k}
    long double u = 1.0L;      // g term over x, u_k = b_k x^{3k}
    long double f = t;
    long double g = u * x;
    long double fp = 0.0L;     // f' = sum 3k t_k / x
    long double gp = u;        // g' = sum (3k+1) u_k
    for (int k = 0; k < 300; ++k) {
        t *= x3 / ((3.0L * k + 2.0L) * (3.0L * k + 3.0L));
        u *= x3 / ((3.0L * k + 3.0L) * (3.0L * k + 4.0L));
        f += t;
        g += u * x;
        fp += 3.0L * (k + 1) * t / x;
        gp += (3.0L * (k + 1) + 1.0L) * u;
        if (std::fabs(t) < 1e-25L * std::fabs(f) && std::fabs(u * x) < 1e-25L * (std::fabs(g) + 1e-30L))
            break;
    }
    ai = kAi0 * f - kAip0 * g;
    aip = kAi0 * fp - kAip0 * gp;
}

// u_k recurrence of the large-argument expansions:
// u_{k+1} = u_k (3k+1/2)(3k+3/2)(3k+5/2)/(54 (k+1)(k+1/2)), v_k = (6k+1)/(1-6k) u_k.
long double u_step(int k) {
    const long double a = 3.0L * k + 0.5L;
    return a * (a + 1.0L) * (a + 2.0L) / (54.0L * (k + 1.0L) * (k + 0.5L));
}

long double v_factor(int k) {
    return (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
}

void asymptotic_pos_ld(long double x, long double& ai, long double& aip) {
    const long double zeta = 2.0L / 3.0L * x * std::sqrt(x);
    long double uk = 1.0L;      // u_k / zeta^k
    long double su = 0.0L, sv = 0.0L;
    long double prev = 1e30L;
    int sign = 1;
    for (int k = 0; k < 200; ++k) {
        if (std::fabs(uk) >= prev) break;   // optimal truncation
        su += sign * uk;
        sv += sign * v_factor(k) * uk;
        prev = std::fabs(uk);
        uk *= u_step(k) / zeta;
        sign = -sign;
        if (prev < 1e-22L) break;
    }
    const long double root4 = std::sqrt(std::sqrt(x));
    const long double e = std::exp(-zeta);
    ai = e / (2.0L * kSqrtPi * root4) * su;
    aip = -root4 * e / (2.0L * kSqrtPi) * sv;
}

void asymptotic_neg_ld(long double x, long double& ai, long double& aip) {
    const long double z = -x;
    const long double zeta = 2.0L / 3.0L * z * std::sqrt(z);
    // Split sum over even/odd k with signs (-1)^{k/2} resp. (-1)^{(k-1)/2}.
    long double uk = 1.0L;      // u_k / zeta^k
    long double s_even = 0.0L, s_odd = 0.0L;
    long double p_even = 0.0L, p_odd = 0.0L;
    long double prev = 1e30L;
    for (int k = 0; k < 400; ++k) {
        if (std::fabs(uk) >= prev) break;
        const long double vk = v_factor(k) * uk;
        const int half = k / 2;
        const long double sgn = (half % 2 == 0) ? 1.0L : -1.0L;
        if (k % 2 == 0) {
            s_even += sgn * uk;
            p_even += sgn * vk;
        } else {
            s_odd += sgn * uk;
            p_odd += sgn * vk;
        }
        prev = std::fabs(uk);
        uk *= u_step(k) / zeta;
        if (prev < 1e-22L) break;
    }
    const long double root4 = std::sqrt(std::sqrt(z));
    const long double arg = zeta - kPi / 4.0L;
    const long double ca = std::cos(arg);
    const long double sa = std::sin(arg);
    ai = (ca * s_even + sa * s_odd) / (kSqrtPi * root4);
    aip = root4 / kSqrtPi * (sa * p_even - ca * p_odd);
}

} // namespace

namespace detail {

void airy_series(double w, double& ai, double& aip) {
    long double a, ap;
    series_ld(w, a, ap);
    ai = static_cast<double>(a);
    aip = static_cast<double>(ap);
}

void airy_asymptotic_pos(double w, double& ai, double& aip) {
    long double a, ap;
    asymptotic_pos_ld(w, a, ap);
    ai = static_cast<double>(a);
    aip = static_cast<double>(ap);
}

void airy_asymptotic_neg(double w, double& ai, double& aip) {
    long double a, ap;
    asymptotic_neg_ld(w, a, ap);
    ai = static_cast<double>(a);
    aip = static_cast<double>(ap);
}

} // namespace detail

AiryValue airy_ai(double w) {
    if (!std::isfinite(w))
        throw DomainError("airy_ai: argument must be finite");
    AiryValue out;
    if (w >= detail::kAirySeriesMax) {
        detail::airy_asymptotic_pos(w, out.ai, out.ai_prime);
        out.method = AiryMethod::asymptotic;
    } else if (w <= detail::kAirySeriesMin) {
        detail::airy_asymptotic_neg(w, out.ai, out.ai_prime);
        out.method = AiryMethod::asymptotic;
    } else {
        detail::airy_series(w, out.ai, out.ai_prime);
        out.method = AiryMethod::series;
    }
    return out;
}

namespace {

// 16-point Gauss-Legendre nodes/weights on [-1, 1] (positive half; mirrored).
constexpr int kGlN = 8;
constexpr long double kGlX[kGlN] = {
    0.09501250983763744018531933542496L, 0.28160355077925891323046050146050L,
    0.45801677765722738634241944298358L, 0.61787624440264374844667176404879L,
    0.75540440835500303389510119484744L, 0.86563120238783174388046789771239L,
    0.94457502307323257607798841553461L, 0.98940093499164993259615417345033L};
constexpr long double kGlW[kGlN] = {
    0.18945061045506849628539672320828L, 0.18260341504492358886676366796922L,
    0.16915651939500253818931207903036L, 0.14959598881657673208150173054748L,
    0.12462897125553387205247628219202L, 0.09515851168249278480992510760225L,
    0.06225352393864789286284383699438L, 0.02715245941175409485178057245602L};

template <typename F>
long double gauss16(const F& f, long double a, long double b) {
    const long double mid = 0.5L * (a + b);
    const long double half = 0.5L * (b - a);
    long double acc = 0.0L;
    for (int i = 0; i < kGlN; ++i) {
        acc += kGlW[i] * (f(mid + half * kGlX[i]) + f(mid - half * kGlX[i]));
    }
    return acc * half;
}

// Iterated averaging of the tail of a sequence of partial sums.
long double accelerate(const std::vector<long double>& partial) {
    const std::size_t take = partial.size() < 24 ? partial.size() : 24;
    std::vector<long double> v(partial.end() - take, partial.end());
    while (v.size() > 1) {
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            v[i] = 0.5L * (v[i] + v[i + 1]);
        v.pop_back();
    }
    return v[0];
}

} // namespace

double airy_integral_check(double w, double s_max, int n) {
    if (!(s_max > 0.0))
        throw PreconditionError("airy_integral_check: s_max must be > 0");
    if (n < 100)
        throw PreconditionError("airy_integral_check: need at least 100 quadrature points");
    if (!std::isfinite(w))
        throw DomainError("airy_integral_check: argument must be finite");

    const long double wl = w;
    auto phase = [&](long double s) { return wl * s + s * s * s / 3.0L; };
    auto dphase = [&](long double s) { return wl + s * s; };
    auto integrand = [&](long double s) { return std::cos(phase(s)); };

    long long budget = n;
    auto spend = [&](long long pts) {
        budget -= pts;
        return budget >= 0;
    };

    // Region A covers the stationary-phase neighbourhood; beyond s0 the
    // phase is strictly increasing.
    const long double s0 = std::min<long double>(s_max, (w < 0.0 ? std::sqrt(-wl) : 0.0L) + 1.0L);
    long double total = 0.0L;
    {
        const long double dp_max = std::fabs(wl) + s0 * s0;
        const long double width = std::min<long double>(0.25L, kPi / (2.0L * (1.0L + dp_max)));
        const int panels = static_cast<int>(std::ceil(s0 / width)) + 1;
        for (int i = 0; i < panels; ++i) {
            const long double a = s0 * i / panels;
            const long double b = s0 * (i + 1) / panels;
            total += gauss16(integrand, a, b);
        }
        spend(16LL * panels);
    }
    if (s0 >= s_max || budget <= 0) {
        // No room for the alternating-lobe stage: only a coarse tail bound
        // is available.
        const long double dp = dphase(s_max);
        const double tail = static_cast<double>(dp > 0.0L ? std::min<long double>(1.0L, 2.0L / dp) : 1.0L) / static_cast<double>(kPi);
        if (tail > 1e-8)
            throw AccuracyError("airy_integral_check: truncation tail too large", tail);
        return static_cast<double>(total / kPi);
    }

    // Half-period lobes: cut at the zeros of cos(phase), i.e. phase = pi/2 + m pi.
    auto next_boundary = [&](long double s_from, long double target) {
        // Safeguarded Newton for phase(s) = target, s >= s_from.
        long double lo = s_from;
        long double hi = s_from;
        long double step = (target - phase(s_from)) / dphase(s_from);
        if (step <= 0.0L) step = 1e-3L;
        while (phase(hi) < target) {
            lo = hi;
            hi += step;
            step *= 2.0L;
        }
        long double s = 0.5L * (lo + hi);
        for (int it = 0; it < 80; ++it) {
            const long double f = phase(s) - target;
            if (f > 0.0L) hi = s; else lo = s;
            const long double newton = s - f / dphase(s);
            s = (newton > lo && newton < hi) ? newton : 0.5L * (lo + hi);
            if (hi - lo < 1e-16L * (1.0L + hi)) break;
        }
        return s;
    };

    const long double mfirst = std::ceil((phase(s0) - kPi / 2.0L) / kPi);
    long double target = kPi / 2.0L + mfirst * kPi;
    long double s_cut = next_boundary(s0, target);
    bool have_first_cut = s_cut <= s_max;
    if (have_first_cut) {
        total += gauss16(integrand, s0, s_cut);
        spend(16 + 8);
    }

    std::vector<long double> partial;
    long double est = total;
    long double est_prev = 0.0L;
    double tail = 1.0;
    bool converged = false;
    long double last_lobe = 0.0L;
    if (have_first_cut) {
        long double running = total;
        for (int lobe = 0; lobe < 100000; ++lobe) {
            target += kPi;
            const long double s_next = next_boundary(s_cut, target);
            if (s_next > s_max || !spend(16 + 8)) break;
            last_lobe = gauss16(integrand, s_cut, s_next);
            running += last_lobe;
            partial.push_back(running);
            s_cut = s_next;
            if (partial.size() >= 6) {
                est_prev = est;
                est = accelerate(partial);
                const long double diff = std::fabs(est - est_prev);
                tail = static_cast<double>(diff / kPi) + 1e-15;
                if (diff < 1e-14L * (1.0L + std::fabs(est))) {
                    converged = true;
                    break;
                }
            }
        }
    }
    if (!partial.empty()) total = est;
    if (!converged) {
        // Remainder of an alternating lobe series is bounded by its last lobe.
        const double lobebound = static_cast<double>(std::fabs(last_lobe) / kPi);
        tail = have_first_cut && !partial.empty() ? std::max(tail, lobebound)
                                                  : 1.0 / static_cast<double>(kPi);
    }
    if (tail > 1e-8)
        throw AccuracyError("airy_integral_check: truncation tail too large", tail);
    return static_cast<double>(total / kPi);
}

} // namespace bdbgeo
