#ifndef VTHETA_VTHETA_HPP
#define VTHETA_VTHETA_HPP

#include "vtheta/coords.hpp"
#include "vtheta/fock.hpp"
#include "vtheta/involutions.hpp"
#include "vtheta/modular.hpp"
#include "vtheta/rational.hpp"
#include "vtheta/report.hpp"
#include "vtheta/samples.hpp"
#include "vtheta/series.hpp"
#include "vtheta/sl2.hpp"
#include "vtheta/special.hpp"
#include "vtheta/theta1pt.hpp"

#endif
