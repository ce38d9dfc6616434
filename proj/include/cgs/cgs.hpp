#pragma once

#include "cgs/collection.hpp"
#include "cgs/convex_set.hpp"
#include "cgs/distributive_law.hpp"
#include "cgs/dsl.hpp"
#include "cgs/error.hpp"
#include "cgs/functor.hpp"
#include "cgs/game.hpp"
#include "cgs/iterate.hpp"
#include "cgs/json.hpp"
#include "cgs/kleisli.hpp"
#include "cgs/laws.hpp"
#include "cgs/play.hpp"
#include "cgs/random.hpp"
#include "cgs/rational.hpp"
#include "cgs/semantics.hpp"
#include "cgs/strategy.hpp"
#include "cgs/synth.hpp"
#include "cgs/verify.hpp"
