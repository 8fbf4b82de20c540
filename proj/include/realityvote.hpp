#pragma once

#include "realityvote/betweenness.hpp"
#include "realityvote/delegation.hpp"
#include "realityvote/error.hpp"
#include "realityvote/guarantees.hpp"
#include "realityvote/io.hpp"
#include "realityvote/montecarlo.hpp"
#include "realityvote/population.hpp"
#include "realityvote/proxy.hpp"
#include "realityvote/random.hpp"
#include "realityvote/rational.hpp"
#include "realityvote/rules.hpp"
#include "realityvote/verifier.hpp"
