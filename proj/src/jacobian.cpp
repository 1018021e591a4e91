#include "ffell/jacobian.hpp"

#include <algorithm>

#include "ffell/zeta.hpp"

namespace ffell {

JacCtx jac_ctx(const Curve& c, const Field* E) {
    if (c.kind() != CurveKind::Hyperelliptic) throw JacobianError("Mumford arithmetic needs a hyperelliptic model");
    // coefficients of h, f live in a subfield of E and keep their encoding
    return JacCtx{E, Poly(E, c.h().c), Poly(E, c.f().c), c.genus()};
}

Mumford mum_identity(const Field* E) { return Mumford{Poly::constant(E, 1), Poly::zero(E)}; }

bool mum_valid(const JacCtx& ctx, const Mumford& d) {
    if (!d.u.is_monic() || d.u.degree() > ctx.g) return false;
    if (d.v.degree() >= d.u.degree()) return false;
    Poly r = poly_add(poly_mul(d.v, d.v), poly_mul(ctx.h, d.v));
    r = poly_sub(r, ctx.f);
    return poly_mod(r, d.u).is_zero();
}

Mumford mum_neg(const JacCtx& ctx, const Mumford& d) {
    Poly v = poly_mod(poly_neg(poly_add(d.v, ctx.h)), d.u);
    return Mumford{d.u, std::move(v)};
}

Mumford cantor_add(const JacCtx& ctx, const Mumford& a, const Mumford& b) {
    if (a.u.F != ctx.E || b.u.F != ctx.E) throw JacobianError("divisor from a different field");
    // composition
    auto [d1, e1, e2] = [&] {
        XgcdResult r = poly_xgcd(a.u, b.u);
        return std::tuple{r.g, r.s, r.t};
    }();
    Poly vh = poly_add(poly_add(a.v, b.v), ctx.h);
    XgcdResult r2 = poly_xgcd(d1, vh);
    Poly d = r2.g;
    Poly s1 = poly_mul(r2.s, e1), s2 = poly_mul(r2.s, e2), s3 = r2.t;
    Poly u = poly_div(poly_mul(a.u, b.u), poly_mul(d, d));
    Poly num = poly_add(poly_add(poly_mul(poly_mul(s1, a.u), b.v), poly_mul(poly_mul(s2, b.u), a.v)),
                        poly_mul(s3, poly_add(poly_mul(a.v, b.v), ctx.f)));
    Poly v = poly_mod(poly_div(num, d), u);
    return mum_reduce(ctx, std::move(u), std::move(v));
}

Mumford mum_reduce(const JacCtx& ctx, Poly u, Poly v) {
    v = poly_mod(v, u);
    while (u.degree() > ctx.g) {
        Poly un = poly_div(poly_sub(ctx.f, poly_add(poly_mul(v, ctx.h), poly_mul(v, v))), u);
        Poly vn = poly_mod(poly_neg(poly_add(ctx.h, v)), un);
        u = std::move(un);
        v = std::move(vn);
    }
    Elem lc = u.lc();
    if (lc != 1) u = poly_scale(u, ctx.E->inv(lc));
    v = poly_mod(v, u);
    return Mumford{std::move(u), std::move(v)};
}

Mumford mum_mul(const JacCtx& ctx, const Mumford& d, long long n) {
    Mumford base = d;
    if (n < 0) {
        base = mum_neg(ctx, base);
        n = -n;
    }
    Mumford acc = mum_identity(ctx.E);
    while (n > 0) {
        if (n & 1) acc = cantor_add(ctx, acc, base);
        n >>= 1;
        if (n) base = cantor_add(ctx, base, base);
    }
    return acc;
}

Mumford frobenius(const JacCtx& ctx, const Mumford& d) {
    if (ctx.E->is_prime_field() || ctx.E->deg() == 1) return d;
    auto fr = [&](Elem a) { return ctx.E->frob_base(a); };
    return Mumford{poly_map(ctx.E, d.u, fr), poly_map(ctx.E, d.v, fr)};
}

std::vector<long long> group_structure(std::size_t n,
                                       const std::function<std::size_t(std::size_t, std::size_t)>& add,
                                       std::size_t id) {
    if (n <= 1) return {};
    auto mul = [&](std::size_t x, long long k) {
        std::size_t acc = id, base = x;
        while (k > 0) {
            if (k & 1) acc = add(acc, base);
            k >>= 1;
            if (k) base = add(base, base);
        }
        return acc;
    };
    // cyclic p-power factors, then recombine into divisors d1 | d2 | ...
    std::vector<std::vector<long long>> per_prime;  // descending prime powers
    for (std::uint64_t p : prime_factors_u64(n)) {
        int a = 0;
        std::uint64_t m = n;
        while (m % p == 0) {
            m /= p;
            ++a;
        }
        std::vector<long long> counts(static_cast<std::size_t>(a) + 1, 1);  // |{x : p^k x = 0}|
        for (int k = 1; k <= a; ++k) {
            long long pk = 1;
            for (int i = 0; i < k; ++i) pk *= static_cast<long long>(p);
            long long cnt = 0;
            for (std::size_t x = 0; x < n; ++x)
                if (mul(x, pk) == id) ++cnt;
            counts[static_cast<std::size_t>(k)] = cnt;
        }
        // lambda_k = #cyclic factors of order >= p^k
        std::vector<int> lambda(static_cast<std::size_t>(a) + 2, 0);
        for (int k = 1; k <= a; ++k) {
            long long ratio = counts[static_cast<std::size_t>(k)] / counts[static_cast<std::size_t>(k - 1)];
            int e = 0;
            while (ratio > 1) {
                if (ratio % static_cast<long long>(p) != 0) throw JacobianError("group law is not a p-group layer");
                ratio /= static_cast<long long>(p);
                ++e;
            }
            lambda[static_cast<std::size_t>(k)] = e;
        }
        std::vector<long long> powers;  // descending
        for (int k = 1; k <= a; ++k) {
            int exactly = lambda[static_cast<std::size_t>(k)] - lambda[static_cast<std::size_t>(k + 1)];
            long long pk = 1;
            for (int i = 0; i < k; ++i) pk *= static_cast<long long>(p);
            for (int j = 0; j < exactly; ++j) powers.push_back(pk);
        }
        std::sort(powers.rbegin(), powers.rend());
        per_prime.push_back(std::move(powers));
    }
    std::size_t rank = 0;
    for (auto& v : per_prime) rank = std::max(rank, v.size());
    std::vector<long long> divisors(rank, 1);
    for (auto& v : per_prime)
        for (std::size_t i = 0; i < v.size(); ++i) divisors[i] *= v[i];  // largest first
    std::reverse(divisors.begin(), divisors.end());
    long long prod = 1;
    for (long long d : divisors) prod *= d;
    if (prod != static_cast<long long>(n)) throw JacobianError("elementary divisor product mismatch");
    return divisors;
}

std::size_t JacobianGroup::index_of(const Mumford& d) const {
    auto it = index_.find(d);
    if (it == index_.end()) throw JacobianError("divisor not in the enumerated group");
    return it->second;
}

std::size_t JacobianGroup::add(std::size_t i, std::size_t j) const {
    return index_of(cantor_add(ctx, elems[i], elems[j]));
}

JacobianGroup enumerate_jacobian(const Curve& c, FieldPtr E) {
    if (c.genus() > 2) throw JacobianError("full enumeration supports genus <= 2");
    JacobianGroup G;
    G.field = std::move(E);
    G.ctx = jac_ctx(c, G.field.get());
    const Field* F = G.field.get();
    std::uint64_t Q = F->q();

    // predicted order, used both as a bound check and as a result check
    LPoly L = l_polynomial(c);
    long long predicted;
    if (F->q() == c.F()->q()) predicted = L.eval(1);
    else if (F->q() == c.F()->q() * c.F()->q()) predicted = extend_constants(L).eval(1);
    else throw JacobianError("enumeration field must be F_q or F_{q^2}");
    if (predicted > 1000000) throw JacobianError("group order exceeds the enumeration bound 10^6");

    std::vector<Mumford> found;
    found.push_back(mum_identity(F));
    for (int du = 1; du <= c.genus(); ++du) {
        // monic u of degree du, all v of degree < du
        std::uint64_t nu = 1;
        for (int i = 0; i < du; ++i) nu *= Q;
        std::vector<std::vector<Mumford>> buckets(static_cast<std::size_t>(nu));
#pragma omp parallel for schedule(dynamic, 64)
        for (long long code = 0; code < static_cast<long long>(nu); ++code) {
            std::vector<Elem> uc(static_cast<std::size_t>(du) + 1, 0);
            std::uint64_t t = static_cast<std::uint64_t>(code);
            for (int i = 0; i < du; ++i) {
                uc[static_cast<std::size_t>(i)] = t % Q;
                t /= Q;
            }
            uc[static_cast<std::size_t>(du)] = 1;
            Poly u(F, uc);
            // r(v) = v^2 + h v - f mod u must vanish
            Poly hm = poly_mod(G.ctx.h, u), fm = poly_mod(G.ctx.f, u);
            for (std::uint64_t vcode = 0; vcode < nu; ++vcode) {
                std::vector<Elem> vc(static_cast<std::size_t>(du), 0);
                std::uint64_t s = vcode;
                for (int i = 0; i < du; ++i) {
                    vc[static_cast<std::size_t>(i)] = s % Q;
                    s /= Q;
                }
                Poly v(F, vc);
                Poly r = poly_mod(poly_add(poly_mul(v, v), poly_mul(hm, v)), u);
                if (poly_sub(r, fm).is_zero())
                    buckets[static_cast<std::size_t>(code)].push_back(Mumford{u, v});
            }
        }
        for (auto& b : buckets)
            for (auto& d : b) found.push_back(std::move(d));
    }
    std::sort(found.begin() + 1, found.end());
    if (static_cast<long long>(found.size()) != predicted)
        throw JacobianError("enumerated order " + std::to_string(found.size()) +
                            " disagrees with the L-polynomial value " + std::to_string(predicted));
    G.elems = std::move(found);
    for (std::size_t i = 0; i < G.elems.size(); ++i) G.index_[G.elems[i]] = i;
    G.divisors = group_structure(
        G.elems.size(), [&](std::size_t i, std::size_t j) { return G.add(i, j); }, 0);
    return G;
}

bool KernelInfo::in_kernel(std::size_t full_index) const {
    return std::binary_search(kernel.begin(), kernel.end(), full_index);
}

std::size_t KernelInfo::kernel_pos(std::size_t full_index) const {
    auto it = std::lower_bound(kernel.begin(), kernel.end(), full_index);
    if (it == kernel.end() || *it != full_index) throw JacobianError("element is not in the norm kernel");
    return static_cast<std::size_t>(it - kernel.begin());
}

KernelInfo norm_kernel(const Curve& c) {
    KernelInfo K;
    FieldPtr E = Field::canonical_extension(c.field(), 2);
    K.full = enumerate_jacobian(c, E);
    const JacobianGroup& G = K.full;
    std::vector<std::size_t> frob_of(G.order()), image;
    std::vector<bool> rational(G.order(), false);
    for (std::size_t i = 0; i < G.order(); ++i) {
        Mumford fd = frobenius(G.ctx, G.elems[i]);
        frob_of[i] = G.index_of(fd);
        rational[i] = fd == G.elems[i];
        std::size_t tr = G.add(i, frob_of[i]);
        image.push_back(tr);
        if (tr == 0) K.kernel.push_back(i);
    }
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    std::size_t rational_count = 0;
    for (std::size_t i = 0; i < G.order(); ++i)
        if (rational[i]) ++rational_count;
    K.trace_surjective = true;
    for (std::size_t i : image)
        if (!rational[i]) K.trace_surjective = false;
    if (image.size() != rational_count) K.trace_surjective = false;
    K.order = static_cast<long long>(K.kernel.size());
    if (K.order * static_cast<long long>(image.size()) != static_cast<long long>(G.order()))
        throw JacobianError("kernel and trace image sizes violate the homomorphism theorem");
    // kernel is Frobenius-stable and frob(D) = -D on it
    for (std::size_t i : K.kernel) {
        if (!K.in_kernel(frob_of[i])) throw JacobianError("norm kernel is not Frobenius-stable");
        if (G.elems[frob_of[i]] != mum_neg(G.ctx, G.elems[i]))
            throw JacobianError("frobenius != inverse on the norm kernel");
    }
    K.divisors = group_structure(
        K.kernel.size(),
        [&](std::size_t i, std::size_t j) { return K.kernel_pos(G.add(K.kernel[i], K.kernel[j])); },
        0);
    for (std::size_t i : K.kernel)
        if (G.add(i, i) == 0) ++K.two_torsion;
    return K;
}

}  // namespace ffell
