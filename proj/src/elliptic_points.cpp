#include "ffell/elliptic_points.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace ffell {

namespace {

// --- arithmetic in the residue field R = F_q[x]/(p) -----------------------

struct ResField {
    const Field* F;
    Poly p;
    std::uint64_t order;  // q^deg p

    Poly mul(const Poly& a, const Poly& b) const { return poly_mod(poly_mul(a, b), p); }
    Poly inv(const Poly& a) const {
        XgcdResult r = poly_xgcd(poly_mod(a, p), p);
        if (r.g.degree() != 0) throw EllipticError("non-invertible residue");
        return poly_mod(poly_scale(r.s, F->inv(r.g.coeff(0))), p);
    }
    Poly pow(Poly a, std::uint64_t e) const {
        Poly acc = Poly::constant(F, 1);
        a = poly_mod(a, p);
        while (e) {
            if (e & 1) acc = mul(acc, a);
            a = mul(a, a);
            e >>= 1;
        }
        return acc;
    }
};

ResField residue_field(const FuncRing& A, const Poly& p) {
    double bits = p.degree() * std::log2(static_cast<double>(A.R->q()));
    if (bits >= 62) throw EllipticError("residue field too large for valuation arithmetic");
    std::uint64_t order = 1;
    for (int i = 0; i < p.degree(); ++i) order *= A.R->q();
    return ResField{A.R.get(), p, order};
}

// linear-or-constant polynomials over R, reduced modulo the monic quadratic
// m(z) = z^2 + m1 z + m0; pair (c0, c1) represents c0 + c1 z
struct QPoly {
    Poly c0, c1;
    bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
};

QPoly qmul(const ResField& R, const QPoly& a, const QPoly& b, const Poly& m0, const Poly& m1) {
    Poly d0 = R.mul(a.c0, b.c0);
    Poly d1 = poly_add(R.mul(a.c0, b.c1), R.mul(a.c1, b.c0));
    Poly d2 = R.mul(a.c1, b.c1);
    // z^2 = -m1 z - m0
    return QPoly{poly_mod(poly_sub(d0, R.mul(d2, m0)), R.p),
                 poly_mod(poly_sub(d1, R.mul(d2, m1)), R.p)};
}

QPoly qpow(const ResField& R, QPoly a, std::uint64_t e, const Poly& m0, const Poly& m1) {
    QPoly acc{Poly::constant(R.F, 1), Poly::zero(R.F)};
    while (e) {
        if (e & 1) acc = qmul(R, acc, a, m0, m1);
        a = qmul(R, a, a, m0, m1);
        e >>= 1;
    }
    return acc;
}

// roots in R of z^2 + m1 z + m0, assuming the polynomial is separable and
// splits over R (caller established z^|R| == z mod m)
std::vector<Poly> split_quadratic(const ResField& R, const Poly& m0, const Poly& m1) {
    const Field* F = R.F;
    auto root_from_linear = [&](const QPoly& g) -> std::optional<Poly> {
        if (g.c1.is_zero()) return std::nullopt;
        return poly_mod(poly_neg(R.mul(g.c0, R.inv(g.c1))), R.p);
    };
    // deterministic (fixed-seed) sequence of full-degree shifts u(x) in R:
    // each trial separates the two roots with probability about 1/2, while
    // small structured shifts can sit inside the bad trace hyperplane for
    // a long time
    std::mt19937_64 rng(0x5eed5eedULL);
    for (int trial = 0;; ++trial) {
        Poly up = Poly::zero(F);
        {
            std::vector<Elem> d(static_cast<std::size_t>(R.p.degree()));
            for (auto& e : d) e = static_cast<Elem>(rng() % F->q());
            up = Poly(F, std::move(d));
        }
        QPoly w;
        if (F->p() != 2) {
            QPoly zu{up, Poly::constant(F, 1)};
            w = qpow(R, zu, (R.order - 1) / 2, m0, m1);
            w.c0 = poly_mod(poly_sub(w.c0, Poly::constant(F, 1)), R.p);
        } else {
            // trace map sum over Frobenius powers of u*z
            int k = 0;
            for (std::uint64_t t = R.order; t > 1; t >>= 1) ++k;
            QPoly uz{Poly::zero(F), up.is_zero() ? Poly::constant(F, 1) : up};
            QPoly acc = uz, pw = uz;
            for (int i = 1; i < k; ++i) {
                pw = qmul(R, pw, pw, m0, m1);
                acc.c0 = poly_mod(poly_add(acc.c0, pw.c0), R.p);
                acc.c1 = poly_mod(poly_add(acc.c1, pw.c1), R.p);
            }
            w = acc;
        }
        if (w.is_zero()) continue;
        if (auto r = root_from_linear(w)) {
            // w is a linear polynomial sharing exactly one root with m
            Poly cand = *r;
            Poly val = poly_mod(poly_add(R.mul(cand, poly_add(cand, m1)), m0), R.p);
            if (val.is_zero()) {
                Poly other = poly_mod(poly_neg(poly_add(m1, cand)), R.p);
                std::vector<Poly> out{cand, other};
                std::sort(out.begin(), out.end(), poly_less);
                return out;
            }
        }
        if (trial > 512) throw EllipticError("quadratic splitting did not converge");
    }
}

int poly_valuation(const Poly& a, const Poly& p) {
    if (a.is_zero()) return INT_MAX;
    int v = 0;
    Poly r = a;
    for (;;) {
        auto [q, rem] = poly_divmod(r, p);
        if (!rem.is_zero()) return v;
        ++v;
        r = std::move(q);
    }
}

}  // namespace

Ideal APrime::ideal(const FuncRing& A) const {
    AElem pe{p, Poly::zero(A.R.get())};
    if (kind == Inert) return ideal_principal(A, pe);
    AElem gen{poly_neg(y0), Poly::constant(A.R.get(), 1)};  // y - y0
    return ideal_from_generators(A, {pe, gen});
}

std::vector<APrime> primes_above(const FuncRing& A, const Poly& p) {
    if (!p.is_monic() || p.degree() < 1 || !poly_is_irreducible(p))
        throw EllipticError("primes_above needs a monic irreducible polynomial");
    ResField R = residue_field(A, p);
    Poly hb = poly_mod(A.h, p), fb = poly_mod(A.f, p);
    // z^2 + m1 z + m0 = z^2 + h z - f mod p
    Poly m1 = hb, m0 = poly_neg(fb);
    const Field* F = A.R.get();
    std::vector<APrime> out;
    bool ram = (F->p() == 2) ? hb.is_zero()
                             : poly_mod(poly_sub(R.mul(m1, m1),
                                                 poly_scale(m0, F->from_int(4))),
                                        p).is_zero();
    if (ram) {
        Poly y0 = (F->p() == 2)
                      ? R.pow(fb, R.order / 2)
                      : poly_mod(poly_neg(R.mul(m1, R.inv(Poly::constant(F, F->from_int(2))))), p);
        out.push_back(APrime{APrime::Ramified, p, y0, p.degree()});
        return out;
    }
    QPoly z{Poly::zero(F), Poly::constant(F, 1)};
    QPoly zq = qpow(R, z, R.order, m0, m1);
    QPoly diff{zq.c0, poly_mod(poly_sub(zq.c1, Poly::constant(F, 1)), R.p)};
    if (!diff.is_zero()) {
        out.push_back(APrime{APrime::Inert, p, Poly::zero(F), 2 * p.degree()});
        return out;
    }
    for (const Poly& r : split_quadratic(R, m0, m1))
        out.push_back(APrime{APrime::Split, p, r, p.degree()});
    return out;
}

int aprime_valuation(const FuncRing& A, const APrime& P, const AElem& n) {
    if (n.is_zero()) throw EllipticError("valuation of zero");
    int va = poly_valuation(n.a, P.p), vb = poly_valuation(n.b, P.p);
    int a = std::min(va, vb);
    if (P.kind == APrime::Inert) return a;
    Poly pa = Poly::constant(A.R.get(), 1);
    for (int i = 0; i < a; ++i) pa = poly_mul(pa, P.p);
    AElem m{poly_div(n.a, pa), poly_div(n.b, pa)};
    if (P.kind == APrime::Ramified) {
        Poly r = poly_mod(poly_add(m.a, poly_mul(m.b, P.y0)), P.p);
        return 2 * a + (r.is_zero() ? 1 : 0);
    }
    // split: Hensel-lift y0 modulo growing powers of p
    int cap = poly_valuation(a_norm_poly(A, m), P.p);
    Poly yk = P.y0, pk = P.p;
    int extra = 0;
    while (extra < cap) {
        Poly r = poly_mod(poly_add(m.a, poly_mul(m.b, yk)), pk);
        if (!r.is_zero()) break;
        ++extra;
        if (extra >= cap) break;
        // lift root of y^2 + hy - f from mod p^k to mod p^{k+1}
        Poly pk1 = poly_mul(pk, P.p);
        Poly val = poly_mod(poly_sub(poly_add(poly_mul(yk, yk), poly_mul(A.h, yk)), A.f), pk1);
        Poly der = poly_add(poly_scale(yk, A.R->from_int(2)), A.h);
        XgcdResult xg = poly_xgcd(poly_mod(der, pk1), pk1);
        if (xg.g.degree() != 0) throw EllipticError("Hensel derivative is not invertible");
        Poly dinv = poly_scale(xg.s, A.R->inv(xg.g.coeff(0)));
        yk = poly_mod(poly_sub(yk, poly_mul(val, dinv)), pk1);
        pk = std::move(pk1);
    }
    return a + extra;
}

namespace {

AElem a_lift(const FuncRing& tilde, const AElem& u) {
    return AElem{Poly(tilde.R.get(), u.a.c), Poly(tilde.R.get(), u.b.c)};
}

AElem eps_elem(const FuncRing& tilde) { return a_const(tilde, tilde.eps()); }

}  // namespace

std::optional<AElem> is_elliptic_pair(const FuncRing& tilde, const FuncRing& A,
                                      const AElem& s, const AElem& t) {
    if (t.is_zero()) throw EllipticError("t must be nonzero");
    AElem n = a_norm_to_K(tilde, A, a_add(tilde, eps_elem(tilde), a_lift(tilde, s)));
    AElem num = a_mul(A, n, a_conj_y(A, t));
    Poly den = a_norm_poly(A, t);
    auto [qa, ra] = poly_divmod(num.a, den);
    auto [qb, rb] = poly_divmod(num.b, den);
    if (!ra.is_zero() || !rb.is_zero()) return std::nullopt;
    return AElem{std::move(qa), std::move(qb)};
}

Ideal j_ideal(const FuncRing& tilde, const FuncRing& A, const EllipticPoint& pt) {
    AElem eps = eps_elem(tilde);
    AElem gen = a_add(tilde, eps, a_lift(tilde, pt.s));
    Ideal J = ideal_from_generators(tilde, {a_lift(tilde, pt.t), gen});
    // recompute with eps' = alpha eps + beta: omega = (eps' + (alpha s - beta))/(alpha t)
    Elem alpha = A.R->p() > 2 ? A.R->from_int(2) : 1;  // 2 = 0 in characteristic 2
    Elem beta = 1;
    AElem eps2 = a_const(tilde, tilde.R->add(tilde.R->mul(alpha, tilde.eps()), beta));
    AElem s2 = a_sub(tilde, a_mul(tilde, a_const(tilde, alpha), a_lift(tilde, pt.s)),
                     a_const(tilde, beta));
    AElem t2 = a_mul(tilde, a_const(tilde, alpha), a_lift(tilde, pt.t));
    Ideal J2 = ideal_from_generators(tilde, {t2, a_add(tilde, eps2, s2)});
    if (!(J == J2)) throw EllipticError("J_omega depends on the choice of eps");
    return J;
}

bool is_self_conjugate(const KernelInfo& K, std::size_t kernel_pos) {
    std::size_t i = K.kernel[kernel_pos];
    return K.full.add(i, i) == 0;
}

namespace {

struct FoundRep {
    long long key;  // scan order; smaller wins
    EllipticPoint pt;
};

void scan_s(const FuncRing& tilde, const FuncRing& A, const KernelInfo& K, int B,
            const AElem& s, long long base_key, std::map<std::size_t, FoundRep>& best) {
    AElem n = a_norm_to_K(tilde, A, a_add(tilde, eps_elem(tilde), a_lift(tilde, s)));
    if (n.is_zero()) throw EllipticError("norm of eps + s vanished");
    Poly Nn = a_norm_poly(A, n);
    // primes of A dividing n, with valuations
    std::vector<std::pair<APrime, int>> supp;
    for (auto& [p, mult] : poly_factor(Nn)) {
        for (APrime& P : primes_above(A, p)) {
            int v = aprime_valuation(A, P, n);
            if (v > 0) supp.emplace_back(std::move(P), v);
        }
    }
    // ideal powers P^e for each prime in the support
    std::vector<std::vector<Ideal>> powers(supp.size());
    for (std::size_t i = 0; i < supp.size(); ++i) {
        powers[i].push_back(ideal_unit(A));
        Ideal Pi = supp[i].first.ideal(A);
        for (int e = 1; e <= supp[i].second; ++e)
            powers[i].push_back(ideal_mul(A, powers[i].back(), Pi));
    }
    std::vector<int> exp(supp.size(), 0);
    long long combo = 0;
    for (;;) {
        Ideal D = ideal_unit(A);
        for (std::size_t i = 0; i < supp.size(); ++i)
            if (exp[i] > 0) D = ideal_mul(A, D, powers[i][static_cast<std::size_t>(exp[i])]);
        if (auto gen = principal_generator(A, D)) {
            const AElem& t = *gen;
            if (t.a.degree() <= B && t.b.degree() <= B) {
                auto tp = is_elliptic_pair(tilde, A, s, t);
                if (!tp) throw EllipticError("divisor of the norm failed the elliptic test");
                EllipticPoint pt{s, t, *tp};
                Ideal J = j_ideal(tilde, A, pt);
                std::size_t cls = ideal_class(tilde, J, K.full);
                if (!K.in_kernel(cls))
                    throw EllipticError("J_omega class lies outside the norm kernel");
                std::size_t pos = K.kernel_pos(cls);
                long long key = base_key + combo;
                auto it = best.find(pos);
                if (it == best.end() || key < it->second.key) best[pos] = FoundRep{key, pt};
            }
        }
        ++combo;
        std::size_t i = 0;
        while (i < supp.size() && exp[i] == supp[i].second) exp[i++] = 0;
        if (i == supp.size()) break;
        ++exp[i];
    }
}

}  // namespace

OrbitTable enumerate_points(const Curve& c, int B, const KernelInfo& K) {
    c.require_class_ops();
    if (B < 0) throw EllipticError("degree bound must be non-negative");
    FuncRing A = ring_A(c);
    FuncRing tilde = ring_tilde(c);
    const Field* F = A.R.get();
    std::uint64_t q = F->q();

    // canonical representatives of s = sa + sb y modulo s -> alpha s + beta:
    // sb monic (or zero); constant term of sa zero; sa itself monic with
    // zero constant term (or zero) when sb = 0
    std::vector<Poly> sbs;  // monic, degree 0..B
    sbs.push_back(Poly::zero(F));
    for (int d = 0; d <= B; ++d) {
        std::uint64_t cnt = 1;
        for (int i = 0; i < d; ++i) cnt *= q;
        for (std::uint64_t code = 0; code < cnt; ++code) {
            std::vector<Elem> cf(static_cast<std::size_t>(d) + 1, 0);
            std::uint64_t tcode = code;
            for (int i = 0; i < d; ++i) {
                cf[static_cast<std::size_t>(i)] = static_cast<Elem>(tcode % q);
                tcode /= q;
            }
            cf[static_cast<std::size_t>(d)] = 1;
            sbs.emplace_back(F, std::move(cf));
        }
    }
    std::uint64_t nsa = 1;  // sa = c1 x + ... + cB x^B
    for (int i = 0; i < B; ++i) nsa *= q;

    auto sa_of = [&](std::uint64_t code) {
        std::vector<Elem> cf(static_cast<std::size_t>(B) + 1, 0);
        for (int i = 1; i <= B; ++i) {
            cf[static_cast<std::size_t>(i)] = static_cast<Elem>(code % q);
            code /= q;
        }
        return Poly(F, std::move(cf));
    };

    long long total = static_cast<long long>(sbs.size()) * static_cast<long long>(nsa);
    const long long kGrain = 1ll << 40;  // combo keys per s slot
    const long long kChunk = 2048;
    std::map<std::size_t, FoundRep> best;
    // chunked scan: keys grow with the scan index, so once every kernel class
    // has a representative no later s can improve one and we may stop
    std::string fatal;
    for (long long start = 0; start < total; start += kChunk) {
        long long stop = std::min(start + kChunk, total);
#pragma omp parallel
        {
            std::map<std::size_t, FoundRep> local;
#pragma omp for schedule(dynamic, 16) nowait
            for (long long idx = start; idx < stop; ++idx) {
                std::uint64_t sb_i = static_cast<std::uint64_t>(idx) / nsa;
                std::uint64_t sa_i = static_cast<std::uint64_t>(idx) % nsa;
                const Poly& sb = sbs[sb_i];
                Poly sa = sa_of(sa_i);
                if (sb.is_zero() && !sa.is_zero() && !sa.is_monic()) continue;  // not canonical
                AElem s{std::move(sa), sb};
                try {
                    scan_s(tilde, A, K, B, s, idx * kGrain, local);
                } catch (const std::exception& ex) {
#pragma omp critical
                    if (fatal.empty()) fatal = ex.what();
                }
            }
#pragma omp critical
            for (auto& [pos, rep] : local) {
                auto it = best.find(pos);
                if (it == best.end() || rep.key < it->second.key) best[pos] = rep;
            }
        }
        if (!fatal.empty()) throw EllipticError(fatal);
        if (best.size() == K.kernel.size()) break;
    }

    OrbitTable out;
    out.kernel_order = K.kernel.size();
    for (auto& [pos, rep] : best) {
        out.covered.push_back(pos);
        out.reps.push_back(rep.pt);
        out.self_conjugate.push_back(is_self_conjugate(K, pos));
    }
    out.full_coverage = out.covered.size() == out.kernel_order;
    return out;
}

StabilizerMatrix stab_mul(const FuncRing& A, const StabilizerMatrix& m, const StabilizerMatrix& n) {
    return StabilizerMatrix{
        a_add(A, a_mul(A, m.a, n.a), a_mul(A, m.b, n.c)),
        a_add(A, a_mul(A, m.a, n.b), a_mul(A, m.b, n.d)),
        a_add(A, a_mul(A, m.c, n.a), a_mul(A, m.d, n.c)),
        a_add(A, a_mul(A, m.c, n.b), a_mul(A, m.d, n.d)),
    };
}

bool stab_is_scalar_identity(const StabilizerMatrix& m) {
    return m.b.is_zero() && m.c.is_zero() && m.a == m.d && m.a.b.is_zero() &&
           m.a.a.degree() == 0 && m.a.a.coeff(0) == 1;
}

StabilizerMatrix stabilizer_generator(const FuncRing& tilde, const FuncRing& A,
                                      const EllipticPoint& pt) {
    Elem e = tilde.eps();
    Elem tr = tilde.R->add(e, tilde.R->conj2(e));      // eps + eps^q, rational
    Elem nrm = tilde.R->mul(e, tilde.R->conj2(e));     // eps^{q+1}, rational
    AElem sp = a_add(A, a_const(A, tr), pt.s);
    StabilizerMatrix m{sp, a_neg(A, pt.tp), pt.t, a_neg(A, pt.s)};
    // det = -s's + t t' must be the constant eps^{q+1}
    AElem det = a_sub(A, a_mul(A, m.a, m.d), a_mul(A, m.b, m.c));
    if (!(det == a_const(A, nrm))) throw EllipticError("stabilizer determinant is not eps^{q+1}");
    if (!moebius_fixes(tilde, A, m, pt)) throw EllipticError("stabilizer does not fix omega");
    return m;
}

bool moebius_fixes(const FuncRing& tilde, const FuncRing& A, const StabilizerMatrix& m,
                   const EllipticPoint& pt) {
    (void)A;
    AElem w = a_add(tilde, eps_elem(tilde), a_lift(tilde, pt.s));
    AElem t = a_lift(tilde, pt.t);
    // (a w + b t) t == w (c w + d t)
    AElem lhs = a_mul(tilde, a_add(tilde, a_mul(tilde, a_lift(tilde, m.a), w),
                                   a_mul(tilde, a_lift(tilde, m.b), t)),
                      t);
    AElem rhs = a_mul(tilde, w,
                      a_add(tilde, a_mul(tilde, a_lift(tilde, m.c), w),
                            a_mul(tilde, a_lift(tilde, m.d), t)));
    return lhs == rhs;
}

long long stabilizer_order(const FuncRing& A, const StabilizerMatrix& m) {
    StabilizerMatrix acc = m;
    long long cap = static_cast<long long>(A.R->q()) * static_cast<long long>(A.R->q());
    for (long long k = 1; k <= cap; ++k) {
        if (stab_is_scalar_identity(acc)) return k;
        acc = stab_mul(A, acc, m);
    }
    throw EllipticError("stabilizer order exceeds q^2 - 1");
}

std::vector<StabilizerMatrix> stabilizer_span(const FuncRing& A, const StabilizerMatrix& m0) {
    const Field* F = A.R.get();
    std::vector<StabilizerMatrix> out;
    for (Elem alpha = 0; alpha < F->q(); ++alpha)
        for (Elem beta = 0; beta < F->q(); ++beta) {
            if (alpha == 0 && beta == 0) continue;
            AElem al = a_const(A, alpha), be = a_const(A, beta);
            StabilizerMatrix m{a_add(A, al, a_mul(A, be, m0.a)), a_mul(A, be, m0.b),
                               a_mul(A, be, m0.c), a_add(A, al, a_mul(A, be, m0.d))};
            AElem det = a_sub(A, a_mul(A, m.a, m.d), a_mul(A, m.b, m.c));
            if (det.b.is_zero() == false || det.a.degree() != 0 || det.a.is_zero())
                throw EllipticError("span element is not invertible over F_q");
            out.push_back(std::move(m));
        }
    return out;
}

MinimalPoly minimal_poly(const FuncRing& tilde, const FuncRing& A, const EllipticPoint& pt) {
    Elem e = tilde.eps();
    Elem tr = tilde.R->add(e, tilde.R->conj2(e));
    // route 1: sigma = (d - a)/c from M0 = [[s', -t'], [t, -s]]
    AElem sp = a_add(A, a_const(A, tr), pt.s);
    AElem sigma1 = a_sub(A, a_neg(A, pt.s), sp);
    // route 2: sigma = -(eps + eps^q + 2s)/t directly
    AElem sigma2 = a_neg(A, a_add(A, a_const(A, tr),
                                  a_mul(A, a_const(A, A.R->from_int(2)), pt.s)));
    if (!(sigma1 == sigma2)) throw EllipticError("minimal polynomial routes disagree");
    MinimalPoly mp{sigma1, pt.tp, pt.t};
    // omega satisfies it; multiplied through by t^2:
    // (eps+s)^2 + sigma_num (eps+s) + tau_num t = 0 in A~
    AElem w = a_add(tilde, eps_elem(tilde), a_lift(tilde, pt.s));
    AElem t = a_lift(tilde, pt.t);
    AElem acc = a_mul(tilde, w, w);
    acc = a_add(tilde, acc, a_mul(tilde, a_lift(tilde, mp.sigma_num), w));
    acc = a_add(tilde, acc, a_mul(tilde, a_lift(tilde, mp.tau_num), t));
    if (!acc.is_zero()) throw EllipticError("omega does not satisfy its minimal polynomial");
    return mp;
}

void parity_check(const FuncRing& tilde, const FuncRing& A, const EllipticPoint& pt) {
    (void)tilde;
    int nu = a_nu(A, pt.t);
    if (nu == INT_MAX || nu % 2 != 0) throw EllipticError("nu(t) is not even");
    Poly Nt = a_norm_poly(A, pt.t);
    for (auto& [p, mult] : poly_factor(Nt))
        for (const APrime& P : primes_above(A, p))
            if (aprime_valuation(A, P, pt.t) > 0 && P.degree % 2 != 0)
                throw EllipticError("prime of odd degree divides tA");
}

}  // namespace ffell
