#pragma once

namespace gslab {

// Execution policy for the heavy kernels. Every parallel kernel has a serial
// reference path that computes the same reduction in the same order, so the
// two can be compared exactly in tests.
enum class Exec {
    serial,
    openmp,
};

} // namespace gslab
