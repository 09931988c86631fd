#pragma once

#include "pnls/attractor.hpp"
#include "pnls/diagnostics.hpp"
#include "pnls/dynamics.hpp"
#include "pnls/errors.hpp"
#include "pnls/gauge.hpp"
#include "pnls/integrators.hpp"
#include "pnls/io.hpp"
#include "pnls/rational.hpp"
#include "pnls/resonance.hpp"
#include "pnls/smoothing.hpp"
#include "pnls/spectral.hpp"
