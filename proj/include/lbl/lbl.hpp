#pragma once

#include "lbl/scalars.hpp"
#include "lbl/roots.hpp"
#include "lbl/linear.hpp"
#include "lbl/model.hpp"
#include "lbl/atlas.hpp"
#include "lbl/overlaps.hpp"
#include "lbl/retraction.hpp"
#include "lbl/serialize.hpp"
#include "lbl/axioms.hpp"
#include "lbl/appendix.hpp"
