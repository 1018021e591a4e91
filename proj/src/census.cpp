#include "ffell/census.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ffell {

EllSummary ell_summary(const Curve& c) {
    LPoly L = l_polynomial(c);
    KernelInfo K = norm_kernel(c);
    return ell_summary(c, L, K, nullptr);
}

EllSummary ell_summary(const Curve& c, const LPoly& L, const KernelInfo& K,
                       const OrbitTable* orbits) {
    if (c.delta() % 2 == 0) throw DeltaParityError("delta is even: no elliptic points");
    EllSummary s;
    s.ell = K.order;
    if (s.ell != ell_count(L))
        throw CensusError("kernel order disagrees with L(-1)");
    s.ell2 = K.two_torsion;
    if (s.ell2 < 1) throw CensusError("identity class must be 2-torsion");
    if ((s.ell - s.ell2) % 2 != 0)
        throw CensusError("ell - ell2 is odd: conjugation pairing broken");
    s.r = (s.ell - s.ell2) / 2;
    s.kernel_divisors = K.divisors;
    s.orbits.resize(static_cast<std::size_t>(s.ell));
    for (std::size_t pos = 0; pos < s.orbits.size(); ++pos) {
        s.orbits[pos].kernel_pos = pos;
        s.orbits[pos].self_conjugate = is_self_conjugate(K, pos);
    }
    if (orbits) {
        for (std::size_t i = 0; i < orbits->covered.size(); ++i) {
            OrbitRecord& rec = s.orbits.at(orbits->covered[i]);
            if (rec.self_conjugate != static_cast<bool>(orbits->self_conjugate[i]))
                throw CensusError("self-conjugacy of orbit and kernel class disagree");
            rec.has_rep = true;
            rec.rep = orbits->reps[i];
        }
    }
    return s;
}

VertexCensus vertex_census(const Curve& c) {
    if (c.delta() != 1) throw DeltaParityError("isolated vertices require delta = 1");
    EllSummary s = ell_summary(c);
    long long q = static_cast<long long>(c.F()->q());
    VertexCensus v;
    v.gl2_count = s.ell2;
    v.torus_count = s.r;
    v.gl2_order = q * (q - 1) * (q - 1) * (q + 1);
    v.torus_order = q * q - 1;
    return v;
}

std::string free_product_summary(const Curve& c) {
    if (c.delta() != 1) throw DeltaParityError("free product summary requires delta = 1");
    EllSummary s = ell_summary(c);
    long long q = static_cast<long long>(c.F()->q());
    std::ostringstream out;
    std::string cyclic = "Z/" + std::to_string(q + 1) + "Z";
    out << "PGL_2(A) ≅ ";
    if (s.r == 0) {
        out << "(remainder)";
    } else if (s.r <= 2) {
        for (long long i = 0; i < s.r; ++i) out << cyclic << " ⋆ ";
        out << "(remainder)";
    } else {
        out << "(⋆_{i=1}^" << s.r << " " << cyclic << ") ⋆ (remainder)";
    }
    out << "\n";
    out << s.ell2 << (s.ell2 == 1 ? " isolated vertex" : " isolated vertices")
        << " of GL_2(F_" << q << ") type (stabilizer order "
        << q * (q - 1) * (q - 1) * (q + 1) << "), each an amalgam GL_2(F_" << q
        << ") ⋆_{B_2(F_" << q << ")} H\n";
    out << s.r << (s.r == 1 ? " isolated vertex" : " isolated vertices") << " of F_" << q * q
        << "* type (stabilizer order " << q * q - 1 << ")\n";
    return out.str();
}

namespace {

Poly poly_from_code(const Field* F, std::uint64_t code, int max_deg) {
    std::vector<Elem> cf(static_cast<std::size_t>(max_deg) + 1, 0);
    for (int i = 0; i <= max_deg; ++i) {
        cf[static_cast<std::size_t>(i)] = static_cast<Elem>(code % F->q());
        code /= F->q();
    }
    return Poly(F, std::move(cf));
}

struct Candidate {
    bool valid = false;
    ScanMatch m;
};

}  // namespace

ScanReport scan(const FieldPtr& F, int genus, const std::string& predicate) {
    if (genus < 1) throw CensusError("scan needs genus >= 1");
    const std::uint64_t q = F->q();
    // family: y^2 + h y = f, f monic of degree 2g+1 with free lower
    // coefficients; h free of degree <= g in characteristic 2, h = 0 otherwise
    std::uint64_t nf = 1;
    for (int i = 0; i < 2 * genus + 1; ++i) nf *= q;
    std::uint64_t nh = 1;
    if (F->p() == 2)
        for (int i = 0; i <= genus; ++i) nh *= q;
    if (nf > (1ull << 20) / nh) throw CensusError("scan family exceeds the budget");
    std::uint64_t total = nh * nf;

    long long want_ell = -1;
    bool eq_pred = false, exp2_pred = false;
    if (predicate.rfind("ell=", 0) == 0) {
        want_ell = std::stoll(predicate.substr(4));
    } else if (predicate == "ell-eq-ell2") {
        eq_pred = true;
    } else if (predicate == "cl-exp-2") {
        exp2_pred = true;
    } else {
        throw CensusError("unknown scan predicate: " + predicate);
    }

    std::vector<Candidate> cands(total);
    long long examined = 0;
    std::string fatal;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : examined)
    for (std::uint64_t code = 0; code < total; ++code) {
        Candidate& cd = cands[code];
        CurveSpec spec;
        spec.field = F;
        spec.genus = genus;
        spec.h = F->p() == 2 ? poly_from_code(F.get(), code / nf, genus) : Poly::zero(F.get());
        std::uint64_t fcode = code % nf;
        Poly f = poly_from_code(F.get(), fcode, 2 * genus);
        std::vector<Elem> fc = f.c;
        fc.resize(static_cast<std::size_t>(2 * genus) + 2, 0);
        fc.back() = 1;
        spec.f = Poly(F.get(), std::move(fc));
        try {
            Curve c = Curve::validate(spec);
            LPoly L = l_polynomial(c);
            KernelInfo K = norm_kernel(c);
            EllSummary s = ell_summary(c, L, K, nullptr);
            JacobianGroup cl0 = enumerate_jacobian(c, F);
            cd.m = ScanMatch{spec.h, spec.f, std::move(L), std::move(s), cl0.divisors};
            cd.valid = true;
            ++examined;
        } catch (const CurveError&) {
            // singular or otherwise invalid model: not part of the family
        } catch (const std::exception& ex) {
#pragma omp critical
            if (fatal.empty()) fatal = ex.what();
        }
    }
    if (!fatal.empty()) throw CensusError("scan candidate failed: " + fatal);

    ScanReport rep;
    rep.predicate = predicate;
    rep.candidates = examined;
    for (Candidate& cd : cands) {
        if (!cd.valid) continue;
        const EllSummary& s = cd.m.summary;
        bool match = (want_ell >= 0 && s.ell == want_ell) || (eq_pred && s.ell == s.ell2) ||
                     (exp2_pred &&
                      cd.m.cl0_divisors.size() == static_cast<std::size_t>(2 * genus) &&
                      std::all_of(cd.m.cl0_divisors.begin(), cd.m.cl0_divisors.end(),
                                  [](long long d) { return d == 2; }));
        if (match) rep.matches.push_back(std::move(cd.m));
    }

    std::ostringstream out;
    out << "scan q=" << q << " genus=" << genus << " predicate=" << predicate << "\n";
    out << "family: imaginary hyperelliptic models y^2 + h y = f, deg f = " << 2 * genus + 1
        << " monic" << (F->p() == 2 ? ", deg h <= g" : ", h = 0") << "\n";
    out << "valid models examined: " << examined << "; matches: " << rep.matches.size() << "\n";
    out << "note: completeness statements apply to this search window only\n";
    std::map<std::string, int> by_lpoly;
    for (const ScanMatch& m : rep.matches) ++by_lpoly[m.L.to_string()];
    for (const ScanMatch& m : rep.matches) {
        out << "  h=" << poly_to_string(m.h) << "  f=" << poly_to_string(m.f)
            << "  L=" << m.L.to_string() << "  ell=" << m.summary.ell
            << " ell2=" << m.summary.ell2 << " r=" << m.summary.r << "  kernel=[";
        for (std::size_t i = 0; i < m.summary.kernel_divisors.size(); ++i)
            out << (i ? "," : "") << m.summary.kernel_divisors[i];
        out << "]  Cl0=[";
        for (std::size_t i = 0; i < m.cl0_divisors.size(); ++i)
            out << (i ? "," : "") << m.cl0_divisors[i];
        out << "]\n";
    }
    for (const auto& [lp, n] : by_lpoly)
        if (n > 1) out << "  L = " << lp << " shared by " << n << " matching models\n";
    rep.text = out.str();
    return rep;
}

}  // namespace ffell
