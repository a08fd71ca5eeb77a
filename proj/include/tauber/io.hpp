#pragma once

// Locale-independent number formatting shared by every CSV and summary writer.

#include <complex>
#include <string>

namespace tauber {

/// Shortest-round-trip is not used: always 17 significant digits, '.' as the
/// decimal separator, no locale.
std::string format_number(double x);
std::string format_number(long long x);
inline std::string format_number(int x) { return format_number(static_cast<long long>(x)); }
inline std::string format_number(long x) { return format_number(static_cast<long long>(x)); }
inline std::string format_number(unsigned long x) { return format_number(static_cast<long long>(x)); }
inline std::string format_number(unsigned long long x) { return format_number(static_cast<long long>(x)); }

/// "re,im"
std::string format_complex(std::complex<double> z);

} // namespace tauber
