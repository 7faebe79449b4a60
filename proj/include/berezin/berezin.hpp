#pragma once

#include "berezin/errors.hpp"
#include "berezin/special_functions.hpp"
#include "berezin/quadrature.hpp"
#include "berezin/ball_geometry.hpp"
#include "berezin/fourier_jacobi.hpp"
#include "berezin/berezin_core.hpp"
#include "berezin/operator_engine.hpp"
