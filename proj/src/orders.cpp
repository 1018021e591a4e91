#include "ffell/orders.hpp"

#include <climits>

namespace ffell {

namespace {

Poly lift(const Field* R, const Poly& p) { return Poly(R, p.c); }

// checked restriction of a Galois-fixed polynomial to the rational subfield
Poly restrict_poly(const Field* Rbig, const Field* Rsmall, const Poly& p) {
    for (Elem c : p.c)
        if (Rbig->conj2(c) != c) throw OrderError("coefficient is not rational");
    return Poly(Rsmall, p.c);
}

AElem row_elem(const std::vector<Poly>& row) { return AElem{row[1], row[0]}; }
std::vector<Poly> elem_row(const AElem& z) { return {z.b, z.a}; }

}  // namespace

Elem FuncRing::eps() const {
    if (!is_extension()) throw OrderError("the rational ring has no eps");
    return R->gen();
}

FuncRing ring_A(const Curve& c) {
    return FuncRing{c.field(), c.field(), c.h(), c.f(), c.genus()};
}

FuncRing ring_tilde(const Curve& c) {
    FieldPtr E = Field::canonical_extension(c.field(), 2);
    return FuncRing{E, c.field(), lift(E.get(), c.h()), lift(E.get(), c.f()), c.genus()};
}

AElem a_zero(const FuncRing& r) { return AElem{Poly::zero(r.R.get()), Poly::zero(r.R.get())}; }
AElem a_one(const FuncRing& r) { return AElem{Poly::constant(r.R.get(), 1), Poly::zero(r.R.get())}; }
AElem a_x(const FuncRing& r) { return AElem{Poly::x(r.R.get()), Poly::zero(r.R.get())}; }
AElem a_y(const FuncRing& r) { return AElem{Poly::zero(r.R.get()), Poly::constant(r.R.get(), 1)}; }
AElem a_const(const FuncRing& r, Elem c) { return AElem{Poly::constant(r.R.get(), c), Poly::zero(r.R.get())}; }
AElem a_from_polys(Poly a, Poly b) { return AElem{std::move(a), std::move(b)}; }

AElem a_add(const FuncRing&, const AElem& u, const AElem& v) {
    return AElem{poly_add(u.a, v.a), poly_add(u.b, v.b)};
}
AElem a_sub(const FuncRing&, const AElem& u, const AElem& v) {
    return AElem{poly_sub(u.a, v.a), poly_sub(u.b, v.b)};
}
AElem a_neg(const FuncRing&, const AElem& u) { return AElem{poly_neg(u.a), poly_neg(u.b)}; }

AElem a_mul(const FuncRing& r, const AElem& u, const AElem& v) {
    // (a1 + b1 y)(a2 + b2 y) with y^2 = f - h y
    Poly bb = poly_mul(u.b, v.b);
    Poly a = poly_add(poly_mul(u.a, v.a), poly_mul(bb, r.f));
    Poly b = poly_sub(poly_add(poly_mul(u.a, v.b), poly_mul(u.b, v.a)), poly_mul(bb, r.h));
    return AElem{std::move(a), std::move(b)};
}

AElem a_conj(const FuncRing& r, const AElem& u) {
    if (!r.is_extension()) return u;
    auto fr = [&](Elem c) { return r.R->conj2(c); };
    return AElem{poly_map(r.R.get(), u.a, fr), poly_map(r.R.get(), u.b, fr)};
}

AElem a_conj_y(const FuncRing& r, const AElem& u) {
    return AElem{poly_sub(u.a, poly_mul(u.b, r.h)), poly_neg(u.b)};
}

int a_weight(const FuncRing& r, const AElem& u) {
    if (u.is_zero()) return INT_MIN;
    int wa = u.a.is_zero() ? INT_MIN : 2 * u.a.degree();
    int wb = u.b.is_zero() ? INT_MIN : 2 * u.b.degree() + 2 * r.g + 1;
    return std::max(wa, wb);
}

int a_nu(const FuncRing& r, const AElem& u) {
    if (u.is_zero()) return INT_MAX;
    return -a_weight(r, u);
}

Poly a_norm_poly(const FuncRing& r, const AElem& u) {
    Poly n = poly_sub(poly_mul(u.a, u.a), poly_mul(poly_mul(u.a, u.b), r.h));
    return poly_sub(n, poly_mul(poly_mul(u.b, u.b), r.f));
}

AElem a_norm_to_K(const FuncRing& tilde, const FuncRing& A, const AElem& u) {
    AElem w = a_mul(tilde, u, a_conj(tilde, u));
    return AElem{restrict_poly(tilde.R.get(), A.R.get(), w.a),
                 restrict_poly(tilde.R.get(), A.R.get(), w.b)};
}

std::string a_to_string(const FuncRing&, const AElem& u) {
    if (u.is_zero()) return "0";
    std::string s;
    if (!u.a.is_zero()) s = poly_to_string(u.a);
    if (!u.b.is_zero()) {
        if (!s.empty()) s += " + ";
        s += "(" + poly_to_string(u.b) + ")*y";
    }
    return s;
}

Ideal ideal_from_generators(const FuncRing& r, const std::vector<AElem>& gens) {
    PolyMatrix m(r.R.get(), 2);
    AElem y = a_y(r);
    for (const AElem& g : gens) {
        if (g.is_zero()) continue;
        m.add_row(elem_row(g));
        m.add_row(elem_row(a_mul(r, y, g)));
    }
    if (m.rows.empty()) throw OrderError("ideal needs a nonzero generator");
    Ideal I{matrix_hnf(m)};
    if (I.m.rows.size() != 2) throw OrderError("ideal lattice is not of full rank");
    for (const auto& row : I.m.rows)
        if (!ideal_contains(r, I, a_mul(r, y, row_elem(row))))
            throw OrderError("lattice is not closed under multiplication by y");
    return I;
}

Ideal ideal_unit(const FuncRing& r) { return ideal_from_generators(r, {a_one(r)}); }
Ideal ideal_principal(const FuncRing& r, const AElem& u) { return ideal_from_generators(r, {u}); }

bool ideal_contains(const FuncRing&, const Ideal& I, const AElem& u) {
    return hnf_contains(I.m, elem_row(u));
}

Ideal ideal_mul(const FuncRing& r, const Ideal& I, const Ideal& J) {
    std::vector<AElem> prods;
    for (const auto& ri : I.m.rows)
        for (const auto& rj : J.m.rows) prods.push_back(a_mul(r, row_elem(ri), row_elem(rj)));
    return ideal_from_generators(r, prods);
}

Ideal ideal_conj(const FuncRing& r, const Ideal& J) {
    std::vector<AElem> gens;
    for (const auto& row : J.m.rows) gens.push_back(a_conj(r, row_elem(row)));
    return ideal_from_generators(r, gens);
}

int ideal_det_degree(const Ideal& I) {
    // echelon: det = m[0][0] * m[1][1]
    return I.m.rows[0][0].degree() + I.m.rows[1][1].degree();
}

Poly ideal_content(const FuncRing& r, const Ideal& I) {
    Poly c = Poly::zero(r.R.get());
    for (const auto& row : I.m.rows)
        for (const auto& e : row) c = poly_gcd(c, e);
    return c;
}

Ideal ideal_primitive_part(const FuncRing& r, const Ideal& I, Poly* content) {
    Poly c = ideal_content(r, I);
    if (content) *content = c;
    if (c.degree() == 0) return I;
    PolyMatrix m(r.R.get(), 2);
    for (const auto& row : I.m.rows) m.add_row({poly_div(row[0], c), poly_div(row[1], c)});
    return Ideal{std::move(m)};  // scaling preserves HNF shape
}

PolyMatrix ideal_rank4(const FuncRing& tilde, const FuncRing& A, const Ideal& J) {
    const Field* Rb = A.R.get();
    const Field* Rt = tilde.R.get();
    PolyMatrix m(Rb, 4);
    Elem eps = tilde.eps();
    for (const auto& row : J.m.rows) {
        for (Elem mult : {Elem(1), eps}) {
            AElem z = a_mul(tilde, a_const(tilde, mult), row_elem(row));
            std::vector<Poly> split(4, Poly::zero(Rb));
            auto put = [&](const Poly& p, std::size_t hi_col, std::size_t lo_col) {
                std::vector<Elem> lo(p.c.size()), hi(p.c.size());
                for (std::size_t i = 0; i < p.c.size(); ++i) {
                    auto d = Rt->digits(p.c[i]);
                    lo[i] = d[0];
                    hi[i] = d[1];
                }
                split[hi_col] = Poly(Rb, std::move(hi));
                split[lo_col] = Poly(Rb, std::move(lo));
            };
            put(z.b, 0, 2);  // eps*y and y columns
            put(z.a, 1, 3);  // eps*1 and 1 columns
            m.add_row(std::move(split));
        }
    }
    PolyMatrix h = matrix_hnf(m);
    if (h.rows.size() != 4) throw OrderError("tilde ideal is not of rank 4 over F_q[x]");
    return h;
}

Ideal ideal_norm(const FuncRing& tilde, const FuncRing& A, const Ideal& J) {
    Ideal P = ideal_mul(tilde, J, ideal_conj(tilde, J));
    PolyMatrix r4 = ideal_rank4(tilde, A, P);
    PolyMatrix m(A.R.get(), 2);
    for (const auto& row : r4.rows)
        if (row[0].is_zero() && row[1].is_zero()) m.add_row({row[2], row[3]});
    if (m.rows.size() != 2) throw OrderError("norm lattice is not of rank 2");
    return Ideal{matrix_hnf(m)};
}

namespace {

// Gauss reduction of the rank-2 lattice under a_weight. Returns the basis
// ordered by weight; z1 attains the lattice minimum.
std::pair<AElem, AElem> reduce_basis(const FuncRing& r, const Ideal& I) {
    const Field* F = r.R.get();
    AElem z1 = row_elem(I.m.rows[0]), z2 = row_elem(I.m.rows[1]);
    if (a_weight(r, z2) < a_weight(r, z1)) std::swap(z1, z2);
    for (;;) {
        int w1 = a_weight(r, z1), w2 = a_weight(r, z2);
        if ((w2 - w1) % 2 != 0) break;  // dominant coordinates differ: reduced
        // both dominated by the same coordinate; cancel leading terms
        bool use_a = (w1 % 2) == 0;
        const Poly& p1 = use_a ? z1.a : z1.b;
        const Poly& p2 = use_a ? z2.a : z2.b;
        int k = (w2 - w1) / 2;
        Elem coef = F->div(p2.lc(), p1.lc());
        Poly mu = poly_shift(Poly::constant(F, coef), k);
        z2 = a_sub(r, z2, AElem{poly_mul(mu, z1.a), poly_mul(mu, z1.b)});
        if (z2.is_zero()) throw OrderError("degenerate ideal lattice");
        if (a_weight(r, z2) < a_weight(r, z1)) std::swap(z1, z2);
    }
    return {z1, z2};
}

}  // namespace

std::optional<AElem> principal_generator(const FuncRing& r, const Ideal& I) {
    auto [z1, z2] = reduce_basis(r, I);
    if (a_weight(r, z1) != ideal_det_degree(I)) return std::nullopt;
    // normalize the dominant coordinate to be monic
    const Field* F = r.R.get();
    bool use_a = (a_weight(r, z1) % 2) == 0;
    Elem lc = use_a ? z1.a.lc() : z1.b.lc();
    Elem s = F->inv(lc);
    return AElem{poly_scale(z1.a, s), poly_scale(z1.b, s)};
}

Mumford ideal_mumford_raw(const FuncRing& r, const Ideal& I) {
    Ideal P = ideal_primitive_part(r, I);
    if (P.m.rows[0][0].degree() != 0 || P.m.rows[0][0].coeff(0) != 1 || !P.m.rows[1][0].is_zero())
        throw OrderError("primitive part is not of the (u, y + v) shape");
    Poly u = P.m.rows[1][1];
    Poly v = poly_mod(poly_neg(P.m.rows[0][1]), u);
    return Mumford{std::move(u), std::move(v)};
}

std::size_t ideal_class(const FuncRing& r, const Ideal& I, const JacobianGroup& G) {
    if (!same_field(G.field.get(), r.R.get())) throw OrderError("Jacobian is over a different field");
    Mumford raw = ideal_mumford_raw(r, I);
    return G.index_of(mum_reduce(G.ctx, raw.u, raw.v));
}

namespace {

// F_q[x]-module generators of a tilde-ideal, as AElems over tilde
std::vector<AElem> amodule_gens(const FuncRing& tilde, const Ideal& J) {
    std::vector<AElem> out;
    AElem e = a_const(tilde, tilde.eps());
    for (const auto& row : J.m.rows) {
        out.push_back(row_elem(row));
        out.push_back(a_mul(tilde, e, row_elem(row)));
    }
    return out;
}

AElem from_rank4_row(const FuncRing& tilde, const FuncRing& A, const std::vector<Poly>& row) {
    const Field* Rt = tilde.R.get();
    Elem eps = tilde.eps();
    auto combine = [&](const Poly& hi, const Poly& lo) {
        std::size_t n = std::max(hi.c.size(), lo.c.size());
        std::vector<Elem> c(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            c[i] = Rt->add(lo.coeff(static_cast<int>(i)),
                           Rt->mul(eps, hi.coeff(static_cast<int>(i))));
        return Poly(Rt, std::move(c));
    };
    (void)A;
    return AElem{combine(row[1], row[3]), combine(row[0], row[2])};
}

// try to put J0 (primitive) in the I + (eps + a) A shape directly
std::optional<NormalForm> shape_from(const FuncRing& tilde, const FuncRing& A, const Ideal& J0) {
    const Field* Rb = A.R.get();
    PolyMatrix r4 = ideal_rank4(tilde, A, J0);
    // does the eps-part lattice contain 1, i.e. (0, 1) in the first two columns?
    PolyMatrix proj(Rb, 2);
    for (const auto& row : r4.rows) proj.add_row({row[0], row[1]});
    auto sol = lattice_solve(proj, {Poly::zero(Rb), Poly::constant(Rb, 1)});
    if (!sol) return std::nullopt;
    // w = combination of the rank-4 rows with eps-part exactly eps*1
    std::vector<Poly> wrow(4, Poly::zero(Rb));
    for (std::size_t i = 0; i < r4.rows.size(); ++i)
        for (std::size_t j = 0; j < 4; ++j)
            wrow[j] = poly_add(wrow[j], poly_mul((*sol)[i], r4.rows[i][j]));
    NormalForm nf;
    nf.a = AElem{wrow[3], wrow[2]};  // w = eps + a with a = a0 + b0 y over F_q
    // I = J0 intersect A: rows with vanishing eps-part
    PolyMatrix im(Rb, 2);
    for (const auto& row : r4.rows)
        if (row[0].is_zero() && row[1].is_zero()) im.add_row({row[2], row[3]});
    if (im.rows.size() != 2) return std::nullopt;
    nf.I = Ideal{matrix_hnf(im)};
    // verify J0 = I + (eps + a) A as F_q[x]-lattices of rank 4
    AElem w = from_rank4_row(tilde, A, wrow);
    AElem wy = a_mul(tilde, a_y(tilde), w);
    PolyMatrix check(Rb, 4);
    for (const auto& row : nf.I.m.rows)
        check.add_row({Poly::zero(Rb), Poly::zero(Rb), row[0], row[1]});
    for (const AElem& z : {w, wy}) {
        const Field* Rt = tilde.R.get();
        std::vector<Poly> split(4, Poly::zero(Rb));
        auto put = [&](const Poly& p, std::size_t hi_col, std::size_t lo_col) {
            std::vector<Elem> lo(p.c.size()), hi(p.c.size());
            for (std::size_t i = 0; i < p.c.size(); ++i) {
                auto d = Rt->digits(p.c[i]);
                lo[i] = d[0];
                hi[i] = d[1];
            }
            split[hi_col] = Poly(Rb, std::move(hi));
            split[lo_col] = Poly(Rb, std::move(lo));
        };
        put(z.b, 0, 2);
        put(z.a, 1, 3);
        check.add_row(std::move(split));
    }
    if (matrix_hnf(check) != r4) return std::nullopt;
    nf.jprime = J0;
    return nf;
}

}  // namespace

NormalForm normal_form(const FuncRing& tilde, const FuncRing& A, const Ideal& J) {
    // running witness: alpha * J = beta * J0
    AElem alpha = a_one(tilde);
    AElem beta = a_one(tilde);
    Poly c0;
    Ideal J0 = ideal_primitive_part(tilde, J, &c0);
    beta = a_mul(tilde, beta, AElem{c0, Poly::zero(tilde.R.get())});

    // small principal perturbations applied when the reduced ideal
    // itself does not carry the shape
    std::vector<AElem> nudges;
    nudges.push_back(a_add(tilde, a_const(tilde, tilde.eps()), a_one(tilde)));
    nudges.push_back(a_add(tilde, a_const(tilde, tilde.eps()), a_x(tilde)));
    nudges.push_back(a_add(tilde, a_y(tilde), a_const(tilde, tilde.eps())));
    nudges.push_back(a_add(tilde, a_y(tilde), a_x(tilde)));
    std::size_t nudge_at = 0;

    for (int iter = 0; iter < 64; ++iter) {
        auto [z1, z2] = reduce_basis(tilde, J0);
        bool principal = a_weight(tilde, z1) == ideal_det_degree(J0);
        if (principal) {
            // J0 = z1 * Atilde: principal, so J ~ unit = A + (eps + 0) A
            NormalForm nf;
            nf.I = ideal_unit(A);
            nf.a = a_zero(A);
            nf.jprime = ideal_unit(tilde);
            nf.alpha = alpha;
            nf.beta = a_mul(tilde, beta, z1);
            return nf;
        }
        if (auto nf = shape_from(tilde, A, J0)) {
            nf->alpha = alpha;
            nf->beta = beta;
            return *nf;
        }
        AElem mult;
        if (ideal_det_degree(J0) > A.g) {
            mult = a_conj_y(tilde, z1);  // reduction step: z1bar J0 / content
        } else {
            if (nudge_at >= nudges.size())
                throw OrderError("no equivalent ideal of the I + (eps+a)A shape found");
            mult = nudges[nudge_at++];
        }
        Ideal J1 = ideal_mul(tilde, J0, ideal_principal(tilde, mult));
        alpha = a_mul(tilde, alpha, mult);
        Poly c;
        J0 = ideal_primitive_part(tilde, J1, &c);
        beta = a_mul(tilde, beta, AElem{c, Poly::zero(tilde.R.get())});
    }
    throw OrderError("normal form search did not converge");
}

}  // namespace ffell
