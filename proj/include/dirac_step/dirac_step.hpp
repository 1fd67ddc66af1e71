#pragma once

#include "dirac_step/amplitudes.hpp"
#include "dirac_step/analysis.hpp"
#include "dirac_step/error.hpp"
#include "dirac_step/kinematics.hpp"
#include "dirac_step/quadrature.hpp"
#include "dirac_step/report.hpp"
#include "dirac_step/wavepacket.hpp"
