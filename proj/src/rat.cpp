/*
   Copyright 2026 The mzw authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "mzw/rat.hpp"

#include <ostream>

#include "mzw/errors.hpp"

namespace mzw {

Rat::Rat(long n, long d) {
    if (d == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rat::Rat(const mpz_class& n, const mpz_class& d) {
    if (d == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
    v_ = mpq_class(n, d);
    v_.canonicalize();
}

Rat::Rat(const std::string& s) {
    if (s.empty()) throw Error(ErrorKind::ParseError, "empty rational literal");
    try {
        v_ = mpq_class(s);
    } catch (const std::invalid_argument&) {
        throw Error(ErrorKind::ParseError, "malformed rational literal '" + s + "'");
    }
    if (v_.get_den() == 0)
        throw Error(ErrorKind::DivisionByZero, "rational literal '" + s + "' has zero denominator");
    v_.canonicalize();
}

Rat Rat::operator-() const {
    Rat r;
    r.v_ = -v_;
    return r;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero rational");
    v_ /= o.v_;
    return *this;
}

Rat Rat::abs() const {
    Rat r;
    r.v_ = ::abs(v_);
    return r;
}

Rat Rat::pow(long e) const {
    if (e == 0) return Rat(1);
    if (is_zero()) {
        if (e < 0) throw Error(ErrorKind::DivisionByZero, "0 raised to a negative power");
        return Rat(0);
    }
    bool neg = e < 0;
    unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), k);
    return neg ? Rat(d, n) : Rat(n, d);
}

std::string Rat::str() const { return v_.get_str(); }

long Rat::to_long_checked(const char* what) const {
    if (!is_integer())
        throw Error(ErrorKind::BackendError, std::string(what) + " is not an integer: " + str());
    if (!v_.get_num().fits_slong_p())
        throw Error(ErrorKind::BackendError, std::string(what) + " does not fit a machine integer: " + str());
    return v_.get_num().get_si();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

std::optional<Rat> try_invert(const Rat& x) {
    if (x.is_zero()) return std::nullopt;
    return Rat(1) / x;
}

Rat binomial(long m, long n) {
    if (n < 0) return Rat(0);
    Rat r(1);
    for (long j = 0; j < n; ++j) r *= Rat(m - j, j + 1);
    return r;
}

} // namespace mzw
