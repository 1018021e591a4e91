// Compares the OpenMP point-counting kernel against the serial reference
// on a few fixed curves and checks that both agree.
#include <chrono>
#include <cstdio>

#include "ffell/curve.hpp"

using namespace ffell;

namespace {

double seconds(std::uint64_t (Curve::*fn)(int) const, const Curve& c, int d,
               std::uint64_t* out) {
    auto t0 = std::chrono::steady_clock::now();
    *out = (c.*fn)(d);
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

void bench(const Curve& c, int d, const char* name) {
    std::uint64_t np = 0, ns = 0;
    double tp = seconds(&Curve::count_points, c, d, &np);
    double ts = seconds(&Curve::count_points_serial, c, d, &ns);
    std::printf("%-28s d=%d  N=%llu  parallel %.3fs  serial %.3fs  speedup %.2fx  %s\n", name,
                d, static_cast<unsigned long long>(np), tp, ts, ts / (tp > 0 ? tp : 1e-9),
                np == ns ? "agree" : "MISMATCH");
}

}  // namespace

int main() {
    {
        auto F2 = Field::prime_field(2);
        CurveSpec s;
        s.field = F2;
        s.genus = 1;
        s.h = Poly(F2.get(), {1});
        s.f = Poly(F2.get(), {1, 1, 0, 1});
        Curve c = Curve::validate(s);
        bench(c, 16, "F2 y^2+y=x^3+x+1");
    }
    {
        auto F7 = Field::prime_field(7);
        CurveSpec s;
        s.field = F7;
        s.genus = 2;
        s.h = Poly::zero(F7.get());
        s.f = Poly(F7.get(), {3, 1, 0, 0, 0, 1});
        Curve c = Curve::validate(s);
        bench(c, 6, "F7 y^2=x^5+x+3");
    }
    {
        auto F9 = Field::canonical_extension(Field::prime_field(3), 2);
        CurveSpec s;
        s.field = F9;
        s.kind = CurveKind::Plane;
        s.genus = 3;
        const Field* F = F9.get();
        // y^3 + y - x^4 = 0
        s.cy = {Poly(F, {0, 0, 0, 0, F->neg(1)}), Poly::constant(F, 1), Poly::zero(F),
                Poly::constant(F, 1)};
        Curve c = Curve::validate(s);
        bench(c, 3, "F9 y^3+y=x^4 (plane)");
    }
    return 0;
}
