#pragma once

#include "tps/energy.hpp"
#include "tps/errors.hpp"
#include "tps/excitation.hpp"
#include "tps/grid.hpp"
#include "tps/io.hpp"
#include "tps/network.hpp"
#include "tps/operators.hpp"
#include "tps/parallel.hpp"
#include "tps/sequence.hpp"
#include "tps/touchstone.hpp"
#include "tps/transform.hpp"
#include "tps/verify.hpp"
#include "tps/waveguide.hpp"
