#include "mccdma/theory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mccdma {

double QFunction(double x) {
	return 0.5 * std::erfc(x / std::numbers::sqrt2);
}

namespace {

double DqpskBer(double ebn0) {
	const double a = std::sqrt(2.0 * ebn0 * (1.0 - 1.0 / std::numbers::sqrt2));
	const double b = std::sqrt(2.0 * ebn0 * (1.0 + 1.0 / std::numbers::sqrt2));
	const double ab = a * b;
	const double ratio = a / b;
	// Q1(a,b) = exp(-(a^2+b^2)/2) sum_k (a/b)^k I_k(ab) for a < b
	double series = 0.0;
	double weight = 1.0;
	for (unsigned k = 0; k < 200; ++k) {
		const double term = weight * std::cyl_bessel_i(static_cast<double>(k), ab);
		series += term;
		if (term < 1e-17 * series)
			break;
		weight *= ratio;
	}
	series -= 0.5 * std::cyl_bessel_i(0.0, ab);
	return std::exp(-(a * a + b * b) / 2.0) * series;
}

}  // namespace

double TheoreticalBer(Modulation scheme, double ebn0_db) {
	if (!std::isfinite(ebn0_db))
		throw std::invalid_argument("Eb/N0 must be finite");
	const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
	switch (scheme) {
	case Modulation::Bpsk:
	case Modulation::Qpsk:
		return QFunction(std::sqrt(2.0 * ebn0));
	case Modulation::Dbpsk:
		return 0.5 * std::exp(-ebn0);
	case Modulation::Dqpsk:
		if (ebn0_db > 26.0)
			throw std::out_of_range("DQPSK theory is evaluated only up to 26 dB");
		if (ebn0 == 0.0)
			return 0.5;
		return DqpskBer(ebn0);
	}
	throw std::invalid_argument("unsupported modulation");
}

}  // namespace mccdma
