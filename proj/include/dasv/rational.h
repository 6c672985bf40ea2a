// Copyright 2026 The dasv Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DASV_RATIONAL_H_
#define DASV_RATIONAL_H_

#include <string>
#include <string_view>

#include <gmpxx.h>

namespace dasv {

// Signed exact rational used inside the Shapley kernels.
using Rational = mpq_class;
using BigInt = mpz_class;

// num / den in lowest terms.
Rational MakeRational(const BigInt& num, const BigInt& den);

// C(n, k) as an exact integer; 0 when k > n.
BigInt Binomial(unsigned long n, unsigned long k);

BigInt Factorial(unsigned long n);

// Accepts "p", "p/q" and plain decimals such as "-0.125". Exponents are
// rejected.
Rational ParseRational(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string RationalToString(const Rational& r);

}  // namespace dasv

#endif  // DASV_RATIONAL_H_
