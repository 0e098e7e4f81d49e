#pragma once

#include "ncp1/errors.hpp"
#include "ncp1/field.hpp"
#include "ncp1/matrix.hpp"
#include "ncp1/linalg.hpp"
#include "ncp1/algebra.hpp"
#include "ncp1/bimodule.hpp"
#include "ncp1/duality.hpp"
#include "ncp1/basechange.hpp"
#include "ncp1/isomorphism.hpp"
#include "ncp1/zalgebra.hpp"
#include "ncp1/symalg.hpp"
#include "ncp1/witt/local.hpp"
#include "ncp1/witt/quaternion_iso.hpp"
#include "ncp1/witt/harness.hpp"
