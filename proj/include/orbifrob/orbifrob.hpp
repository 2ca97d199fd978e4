#pragma once

// Umbrella header.

#include "orbifrob/cocycles.hpp"
#include "orbifrob/errors.hpp"
#include "orbifrob/frobenius.hpp"
#include "orbifrob/gfrob.hpp"
#include "orbifrob/group.hpp"
#include "orbifrob/io.hpp"
#include "orbifrob/linalg.hpp"
#include "orbifrob/permutation.hpp"
#include "orbifrob/scalar.hpp"
#include "orbifrob/sparse.hpp"
#include "orbifrob/special.hpp"
#include "orbifrob/symgroup.hpp"
#include "orbifrob/sympow.hpp"
