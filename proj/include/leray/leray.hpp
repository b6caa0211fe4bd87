#pragma once

#include "leray/types.hpp"
#include "leray/geometry.hpp"
#include "leray/boundary.hpp"
#include "leray/quadrature.hpp"
#include "leray/measures.hpp"
#include "leray/parallel.hpp"
#include "leray/random.hpp"
#include "leray/transform.hpp"
#include "leray/report.hpp"
#include "leray/experiments/fit.hpp"
#include "leray/experiments/blowup.hpp"
#include "leray/experiments/bounds.hpp"
#include "leray/experiments/identities.hpp"
#include "leray/experiments/reproducing.hpp"
