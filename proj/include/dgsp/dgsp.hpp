#pragma once

#include "dgsp/graph.hpp"
#include "dgsp/numla.hpp"
#include "dgsp/arnoldi.hpp"
#include "dgsp/rational.hpp"
#include "dgsp/polynomial.hpp"
#include "dgsp/oracle.hpp"
#include "dgsp/jordan.hpp"
#include "dgsp/gft.hpp"
#include "dgsp/filters.hpp"
#include "dgsp/randgraphs.hpp"
