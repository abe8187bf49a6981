#pragma once

#include "r4curv/axial.hpp"
#include "r4curv/classify.hpp"
#include "r4curv/directions.hpp"
#include "r4curv/ellipse.hpp"
#include "r4curv/errors.hpp"
#include "r4curv/expression.hpp"
#include "r4curv/flow.hpp"
#include "r4curv/format.hpp"
#include "r4curv/forms.hpp"
#include "r4curv/frame.hpp"
#include "r4curv/grid.hpp"
#include "r4curv/jet.hpp"
#include "r4curv/sphere_fit.hpp"
#include "r4curv/structure.hpp"
#include "r4curv/surface.hpp"
#include "r4curv/svg.hpp"
#include "r4curv/tolerances.hpp"
#include "r4curv/verify.hpp"
#include "r4curv/winding.hpp"
