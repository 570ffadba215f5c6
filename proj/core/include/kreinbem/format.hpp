// Copyright krein-bem contributors.
// SPDX-License-Identifier: Apache-2.0

#ifndef KREINBEM_FORMAT_HPP
#define KREINBEM_FORMAT_HPP

#include <complex>
#include <string>
#include <string_view>

namespace kreinbem
{

/// Shortest decimal string that parses back to exactly `v`.
std::string format_double(double v);

/// Canonical complex literal "a+bi" / "a-bi" (no spaces, shortest round-trip parts).
std::string format_complex(std::complex<double> z);

/// Parses "a", "bi", "a+bi", "a-bi" (also "i", "-i"). Throws Error on malformed input.
std::complex<double> parse_complex(std::string_view s);

}  // namespace kreinbem

#endif  // KREINBEM_FORMAT_HPP
