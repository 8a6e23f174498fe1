#pragma once

#include <doctest.h>

#include <cmath>

// Absolute-tolerance check that prints the offending values.
#define CHECK_CLOSE(value, target, tol)                                                            \
    do {                                                                                           \
        const double v_ = (value);                                                                 \
        const double t_ = (target);                                                                \
        INFO("value ", v_, " target ", t_, " tol ", (tol));                                        \
        CHECK(std::abs(v_ - t_) <= (tol));                                                         \
    } while (0)
