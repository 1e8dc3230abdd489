#pragma once

#include "dancekit/braids.hpp"
#include "dancekit/census.hpp"
#include "dancekit/choreography.hpp"
#include "dancekit/codecs.hpp"
#include "dancekit/diagram.hpp"
#include "dancekit/engine.hpp"
#include "dancekit/error.hpp"
#include "dancekit/json_io.hpp"
#include "dancekit/render.hpp"
