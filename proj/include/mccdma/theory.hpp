#pragma once

#include "mccdma/modem.hpp"

namespace mccdma {

/// Gaussian tail probability Q(x) = P(N(0,1) > x).
double QFunction(double x);

/// Per-bit error probability over AWGN at the given Eb/N0:
///   BPSK, QPSK (Gray)   Q(sqrt(2 Eb/N0))
///   DBPSK               exp(-Eb/N0) / 2
///   DQPSK (Gray)        Q1(a,b) - I0(ab) exp(-(a^2+b^2)/2) / 2,
///                       a,b = sqrt(2 Eb/N0 (1 -+ 1/sqrt(2)))
/// The DQPSK expression is evaluated by the Bessel series of the Marcum Q
/// function and is valid for Eb/N0 <= 26 dB (beyond that I_k(ab) overflows).
double TheoreticalBer(Modulation scheme, double ebn0_db);

}  // namespace mccdma
