#include "tauber/io.hpp"

#include <charconv>
#include <cmath>

namespace tauber {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) x = 0.0; // fold -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return {buf, res.ptr};
}

std::string format_number(long long x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

std::string format_complex(std::complex<double> z) { return format_number(z.real()) + "," + format_number(z.imag()); }

} // namespace tauber
