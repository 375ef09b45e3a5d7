#pragma once

#include "rqframes/errors.hpp"
#include "rqframes/frames.hpp"
#include "rqframes/harness.hpp"
#include "rqframes/json_io.hpp"
#include "rqframes/linalg.hpp"
#include "rqframes/perturb.hpp"
#include "rqframes/quaternion.hpp"
#include "rqframes/solve.hpp"
#include "rqframes/spectrum.hpp"
#include "rqframes/subspace.hpp"
