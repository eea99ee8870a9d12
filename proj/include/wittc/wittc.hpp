#pragma once

#include "wittc/arith.hpp"
#include "wittc/bigint.hpp"
#include "wittc/christol.hpp"
#include "wittc/deligne_ribet.hpp"
#include "wittc/dfao.hpp"
#include "wittc/fq.hpp"
#include "wittc/ideal.hpp"
#include "wittc/json_io.hpp"
#include "wittc/membership.hpp"
#include "wittc/orbit.hpp"
#include "wittc/quadratic.hpp"
#include "wittc/report.hpp"
#include "wittc/series.hpp"
#include "wittc/witt_vector.hpp"
