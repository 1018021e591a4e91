#include "ffell/field.hpp"

#include <algorithm>
#include <sstream>

namespace ffell {

bool same_field(const Field* a, const Field* b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->p() != b->p() || a->q() != b->q() || a->deg() != b->deg()) return false;
    if (a->modulus() != b->modulus()) return false;
    if (a->is_prime_field() != b->is_prime_field()) return false;
    if (a->is_prime_field()) return true;
    return same_field(a->base().get(), b->base().get());
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

FieldPtr Field::prime_field(std::uint64_t p) {
    if (!is_prime_u64(p)) throw FieldError("characteristic is not prime: " + std::to_string(p));
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->q_ = p;
    f->deg_ = 1;
    f->deg_over_prime_ = 1;
    return f;
}

FieldPtr Field::extension(FieldPtr base, std::vector<Elem> modulus_low) {
    if (!base) throw FieldError("null base field");
    int k = static_cast<int>(modulus_low.size());
    if (k < 1) throw FieldError("empty modulus");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = base->p();
    f->deg_ = k;
    f->deg_over_prime_ = k * base->deg_over_prime();
    std::uint64_t q = 1;
    for (int i = 0; i < k; ++i) {
        if (q > (1ull << 40) / base->q()) throw FieldError("field too large");
        q *= base->q();
    }
    f->q_ = q;
    f->base_ = std::move(base);
    f->mod_ = std::move(modulus_low);
    f->build_tables();
    return f;
}

void Field::build_tables() {
    if (q_ > 512) return;
    multab_.assign(q_ * q_, 0);
    for (std::uint64_t a = 0; a < q_; ++a)
        for (std::uint64_t b = a; b < q_; ++b) {
            Elem v = mul_nocache(a, b);
            multab_[a * q_ + b] = v;
            multab_[b * q_ + a] = v;
        }
    has_tables_ = true;
}

Elem Field::add(Elem a, Elem b) const {
    if (!base_) return (a + b) % p_;
    std::uint64_t q0 = base_->q();
    Elem out = 0, m = 1;
    for (int i = 0; i < deg_; ++i) {
        out += base_->add(a % q0, b % q0) * m;
        a /= q0;
        b /= q0;
        m *= q0;
    }
    return out;
}

Elem Field::neg(Elem a) const {
    if (!base_) return a == 0 ? 0 : p_ - a;
    std::uint64_t q0 = base_->q();
    Elem out = 0, m = 1;
    for (int i = 0; i < deg_; ++i) {
        out += base_->neg(a % q0) * m;
        a /= q0;
        m *= q0;
    }
    return out;
}

Elem Field::sub(Elem a, Elem b) const { return add(a, neg(b)); }

Elem Field::mul_nocache(Elem a, Elem b) const {
    if (!base_) return (a * b) % p_;
    std::uint64_t q0 = base_->q();
    // schoolbook product of digit vectors, then reduction by the modulus
    std::vector<Elem> da = digits(a), db = digits(b);
    std::vector<Elem> prod(2 * deg_ - 1, 0);
    for (int i = 0; i < deg_; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < deg_; ++j)
            if (db[j] != 0) prod[i + j] = base_->add(prod[i + j], base_->mul(da[i], db[j]));
    }
    for (int i = 2 * deg_ - 2; i >= deg_; --i) {
        Elem c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < deg_; ++j)
            prod[i - deg_ + j] = base_->sub(prod[i - deg_ + j], base_->mul(c, mod_[j]));
    }
    prod.resize(deg_);
    return from_digits(prod);
}

Elem Field::mul(Elem a, Elem b) const {
    if (has_tables_) return multab_[a * q_ + b];
    return mul_nocache(a, b);
}

Elem Field::pow(Elem a, std::uint64_t e) const {
    Elem r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw FieldError("division by zero");
    return pow(a, q_ - 2);
}

Elem Field::from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<Elem>(r);
}

std::vector<Elem> Field::digits(Elem a) const {
    std::uint64_t q0 = base_ ? base_->q() : p_;
    std::vector<Elem> d(static_cast<std::size_t>(base_ ? deg_ : 1));
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = a % q0;
        a /= q0;
    }
    return d;
}

Elem Field::from_digits(const std::vector<Elem>& d) const {
    std::uint64_t q0 = base_ ? base_->q() : p_;
    Elem out = 0;
    for (std::size_t i = d.size(); i-- > 0;) out = out * q0 + d[i];
    return out;
}

Elem Field::gen() const {
    if (!base_) throw FieldError("prime field has no extension generator");
    return base_->q();  // encoding of z
}

Elem Field::frob_base(Elem a) const {
    if (!base_) return a;
    return pow(a, base_->q());
}

Elem Field::conj2(Elem a) const {
    if (!base_ || deg_ != 2) throw FieldError("conj2 requires a degree-2 extension");
    // roots of z^2 + c1 z + c0 sum to -c1, so eps^q = -c1 - eps
    std::uint64_t q0 = base_->q();
    Elem a0 = a % q0, a1 = a / q0;
    Elem epsq_const = base_->neg(mod_[1]);
    Elem r0 = base_->add(a0, base_->mul(a1, epsq_const));
    Elem r1 = base_->neg(a1);
    return r0 + r1 * q0;
}

std::uint64_t Field::trace_to_prime(Elem a) const {
    Elem t = 0, x = a;
    for (int i = 0; i < deg_over_prime_; ++i) {
        t = add(t, x);
        x = pow(x, p_);
    }
    return t;  // lies in the prime subfield, encoded as its own value
}

std::uint64_t Field::mult_order(Elem a) const {
    if (a == 0) throw FieldError("order of zero");
    std::uint64_t ord = q_ - 1;
    for (std::uint64_t f : prime_factors_u64(q_ - 1)) {
        while (ord % f == 0 && pow(a, ord / f) == 1) ord /= f;
    }
    return ord;
}

std::string Field::to_string(Elem a) const {
    if (!base_) return std::to_string(a);
    std::ostringstream os;
    os << '[';
    auto d = digits(a);
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) os << ',';
        os << base_->to_string(d[i]);
    }
    os << ']';
    return os.str();
}

namespace {

// Rabin irreducibility test for a monic polynomial over `F`, coefficients
// c0..ck (ck = 1), using arithmetic on raw digit vectors mod the candidate.
std::vector<Elem> polymod_mul(const Field& F, const std::vector<Elem>& a, const std::vector<Elem>& b,
                              const std::vector<Elem>& mod_low) {
    int k = static_cast<int>(mod_low.size());
    std::vector<Elem> prod(2 * k - 1, 0);
    for (int i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < k; ++j)
            if (b[j] != 0) prod[i + j] = F.add(prod[i + j], F.mul(a[i], b[j]));
    }
    for (int i = 2 * k - 2; i >= k; --i) {
        Elem c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (int j = 0; j < k; ++j) prod[i - k + j] = F.sub(prod[i - k + j], F.mul(c, mod_low[j]));
    }
    prod.resize(k);
    return prod;
}

std::vector<Elem> polymod_powq(const Field& F, std::vector<Elem> x, std::uint64_t e,
                               const std::vector<Elem>& mod_low) {
    int k = static_cast<int>(mod_low.size());
    std::vector<Elem> r(k, 0);
    r[0] = 1;
    while (e) {
        if (e & 1) r = polymod_mul(F, r, x, mod_low);
        x = polymod_mul(F, x, x, mod_low);
        e >>= 1;
    }
    return r;
}

std::uint64_t ipow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

bool is_irreducible_low(const Field& F, const std::vector<Elem>& mod_low) {
    int k = static_cast<int>(mod_low.size());
    if (k == 1) return true;
    std::vector<Elem> x(k, 0);
    x[1] = 1;
    // x^(q^k) == x mod f
    std::vector<Elem> xq = x;
    for (int i = 0; i < k; ++i) xq = polymod_powq(F, xq, F.q(), mod_low);
    if (xq != x) return false;
    // gcd(x^(q^(k/r)) - x, f) == 1 for each prime r | k; since f is monic and
    // we only need nontriviality, it suffices that x^(q^(k/r)) != x would be
    // necessary but not sufficient -- do the full gcd on digit vectors.
    for (std::uint64_t r : prime_factors_u64(static_cast<std::uint64_t>(k))) {
        std::vector<Elem> xe = x;
        int steps = k / static_cast<int>(r);
        for (int i = 0; i < steps; ++i) xe = polymod_powq(F, xe, F.q(), mod_low);
        // g = xe - x as a polynomial of degree < k; check gcd(g, f) == 1 by
        // testing that g is a unit mod f, i.e. g generates everything; do a
        // Euclidean gcd of f and g over F.
        std::vector<Elem> g = xe;
        g[1] = F.sub(g[1], 1);
        while (!g.empty() && g.back() == 0) g.pop_back();
        if (g.empty()) return false;
        // Euclid: a = monic modulus (degree k), b = g
        std::vector<Elem> a = mod_low;
        a.push_back(1);
        std::vector<Elem> b = g;
        while (!b.empty()) {
            // a mod b
            int db = static_cast<int>(b.size()) - 1;
            Elem lb = F.inv(b.back());
            while (static_cast<int>(a.size()) - 1 >= db && !a.empty()) {
                int da = static_cast<int>(a.size()) - 1;
                Elem c = F.mul(a.back(), lb);
                if (c != 0)
                    for (int i = 0; i <= db; ++i)
                        a[da - db + i] = F.sub(a[da - db + i], F.mul(c, b[i]));
                while (!a.empty() && a.back() == 0) a.pop_back();
                if (static_cast<int>(a.size()) - 1 < db) break;
            }
            std::swap(a, b);
        }
        if (a.size() != 1) return false;  // nontrivial common factor
    }
    return true;
}

}  // namespace

FieldPtr Field::canonical_extension(FieldPtr base, int d) {
    if (d < 1) throw FieldError("extension degree must be positive");
    if (d == 1 && base->is_prime_field()) {
        // degenerate modulus z (i.e. z - 0), keeps F_p representable as an
        // "extension" when a uniform shape is convenient
        return extension(base, {0});
    }
    std::uint64_t q0 = base->q();
    std::uint64_t count = ipow_u64(q0, d);
    for (std::uint64_t v = 0; v < count; ++v) {
        std::vector<Elem> low(static_cast<std::size_t>(d));
        std::uint64_t t = v;
        for (int i = 0; i < d; ++i) {
            low[static_cast<std::size_t>(i)] = t % q0;
            t /= q0;
        }
        if (is_irreducible_low(*base, low)) return extension(base, low);
    }
    throw FieldError("no irreducible modulus found");  // unreachable
}

FieldPtr Field::make(std::uint64_t p, int m) {
    if (m < 1) throw FieldError("extension degree must be positive");
    auto pf = prime_field(p);
    std::uint64_t q = 1;
    for (int i = 0; i < m; ++i) {
        q *= p;
        if (q > 65536) throw FieldError("field size exceeds 2^16");
    }
    if (m == 1) return pf;
    return canonical_extension(pf, m);
}

}  // namespace ffell
