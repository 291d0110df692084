#pragma once

#include "qdgate/errors.hpp"
#include "qdgate/gate_synthesis.hpp"
#include "qdgate/hamiltonians.hpp"
#include "qdgate/operator_algebra.hpp"
#include "qdgate/phase_engine.hpp"
#include "qdgate/propagation.hpp"
#include "qdgate/pulse_scheduler.hpp"
