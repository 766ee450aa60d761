#pragma once

#include <boost/multiprecision/float128.hpp>
#include <complex>

namespace padeclust {

// Software quad precision (113-bit mantissa, ~34 significant digits).
using Extended = boost::multiprecision::float128;

inline double to_double(double x) { return x; }
inline double to_double(const Extended& x) { return static_cast<double>(x); }

inline double magnitude(double x) { return x < 0 ? -x : x; }
inline double magnitude(const std::complex<double>& x) { return std::abs(x); }
inline double magnitude(const Extended& x) { return static_cast<double>(abs(x)); }

inline double conj_of(double x) { return x; }
inline std::complex<double> conj_of(const std::complex<double>& x) { return std::conj(x); }
inline Extended conj_of(const Extended& x) { return x; }

inline std::complex<double> to_complex(double x) { return {x, 0.0}; }
inline std::complex<double> to_complex(const std::complex<double>& x) { return x; }
inline std::complex<double> to_complex(const Extended& x) { return {static_cast<double>(x), 0.0}; }

}  // namespace padeclust
