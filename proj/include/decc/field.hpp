#pragma once

#include <memory>
#include <optional>
#include <utility>

#include "decc/bigint.hpp"

namespace decc {

// ---- raw modular helpers (p assumed an odd prime; not re-checked) ----

Int mod_reduce(const Int& v, const Int& p);       // canonical in [0, p)
Int mod_inv(const Int& v, const Int& p);          // DivByZero on v == 0
Int mod_pow(const Int& base, const Int& e, const Int& p);

// Both square roots (smaller first) when v is a quadratic residue, empty
// when it is not; (0, 0) for v == 0. Uses the p = 3 (mod 4) shortcut when
// it applies, Tonelli-Shanks otherwise.
std::optional<std::pair<Int, Int>> mod_sqrt(const Int& v, const Int& p);

bool is_probable_prime(const Int& v);

// ---- typed field API ----

struct FieldElement {
    Int value;
    std::shared_ptr<const Int> modulus;

    bool operator==(const FieldElement& o) const {
        return value == o.value && *modulus == *o.modulus;
    }
};

class PrimeField {
public:
    explicit PrimeField(Int p);  // Usage error unless p is an odd prime > 3

    const Int& modulus() const { return *p_; }
    FieldElement element(Int v) const;  // canonical reduce into [0, p)

private:
    std::shared_ptr<const Int> p_;
};

FieldElement fe_add(const FieldElement& x, const FieldElement& y);
FieldElement fe_sub(const FieldElement& x, const FieldElement& y);
FieldElement fe_mul(const FieldElement& x, const FieldElement& y);
FieldElement fe_neg(const FieldElement& x);
FieldElement fe_inv(const FieldElement& x);  // DivByZero on 0
FieldElement fe_pow(const FieldElement& x, const Int& e);

std::optional<std::pair<FieldElement, FieldElement>> fe_sqrt(
    const FieldElement& x);

}  // namespace decc
