#pragma once

// Lattice-point kernels behind the rectangle counting function. The serial
// variant is the reference; the OpenMP variant partitions the first index
// and reduces integer counts, so both agree exactly.

namespace speclab::kernels {

/// pi^2 ((m/a)^2 + (n/b)^2), the single definition used by every count.
double rectangle_mode(double a, double b, long long m, long long n);

namespace serial {
long long rectangle_lattice_count(double a, double b, double t);
}

namespace omp {
long long rectangle_lattice_count(double a, double b, double t);
}

}  // namespace speclab::kernels
