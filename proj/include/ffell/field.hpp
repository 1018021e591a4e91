#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffell {

// Encoded field element. For a prime field F_p the encoding is the value
// in [0,p). For an extension of degree k over a base field of order q0,
// an element sum_i d_i z^i is encoded as sum_i d_i * q0^i.
using Elem = std::uint64_t;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite field, either F_p or an extension of another Field by a monic
// irreducible modulus. All operations are pure; a Field is immutable after
// construction and safe to share between threads.
class Field {
  public:
    static FieldPtr prime_field(std::uint64_t p);

    // F_{p^m} with the canonical modulus: the lexicographically smallest
    // monic irreducible of degree m over F_p (coefficients scanned constant
    // term first). m == 1 uses the degenerate modulus z.
    static FieldPtr make(std::uint64_t p, int m);

    // Extension by an explicit monic modulus, given as the coefficient list
    // c0..c_{k-1} of z^k + c_{k-1} z^{k-1} + ... + c0 over `base`.
    static FieldPtr extension(FieldPtr base, std::vector<Elem> modulus_low);

    // Degree-d extension with the canonical (lex-smallest) modulus over base.
    static FieldPtr canonical_extension(FieldPtr base, int d);

    std::uint64_t p() const { return p_; }
    std::uint64_t q() const { return q_; }
    int deg() const { return deg_; }            // degree over base (1 for F_p)
    int deg_over_prime() const { return deg_over_prime_; }
    const FieldPtr& base() const { return base_; }
    bool is_prime_field() const { return base_ == nullptr; }
    const std::vector<Elem>& modulus() const { return mod_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem add(Elem a, Elem b) const;
    Elem sub(Elem a, Elem b) const;
    Elem neg(Elem a) const;
    Elem mul(Elem a, Elem b) const;
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t e) const;

    // Scalar n mod p, embedded via the prime subfield.
    Elem from_int(long long n) const;
    // Embed an element of the immediate base field.
    Elem embed_base(Elem a) const { return a; }

    std::vector<Elem> digits(Elem a) const;      // base-field digits, length deg()
    Elem from_digits(const std::vector<Elem>& d) const;

    // The class of z, a generator of the extension over its base.
    Elem gen() const;

    // Frobenius relative to the base field: a -> a^(q_base).
    Elem frob_base(Elem a) const;
    // For degree-2 extensions: the nontrivial Galois conjugate a+eps*b ->
    // a+eps^q*b, computed from the modulus (cheap, no exponentiation).
    Elem conj2(Elem a) const;
    // Trace to the prime field F_p, as an integer in [0,p).
    std::uint64_t trace_to_prime(Elem a) const;

    // Multiplicative order of a nonzero element.
    std::uint64_t mult_order(Elem a) const;

    std::string to_string(Elem a) const;

    Field(const Field&) = delete;
    Field& operator=(const Field&) = delete;

  private:
    Field() = default;

    std::uint64_t p_ = 0;
    std::uint64_t q_ = 0;
    int deg_ = 1;
    int deg_over_prime_ = 1;
    FieldPtr base_;
    std::vector<Elem> mod_;       // low coefficients of the monic modulus
    std::vector<Elem> multab_;    // q*q multiplication table when small
    bool has_tables_ = false;

    Elem mul_nocache(Elem a, Elem b) const;
    void build_tables();
};

// Structural equality: same tower shape and moduli (distinct Field objects
// built the same way are interchangeable; element encodings agree).
bool same_field(const Field* a, const Field* b);

bool is_prime_u64(std::uint64_t n);
std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n);

}  // namespace ffell
