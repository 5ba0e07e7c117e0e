#pragma once

#include "iad/errors.hpp"
#include "iad/geometry.hpp"
#include "iad/channel.hpp"
#include "iad/types.hpp"
#include "iad/radio.hpp"
#include "iad/deploy.hpp"
#include "iad/baseline.hpp"
#include "iad/scenario.hpp"
#include "iad/io.hpp"
#include "iad/harness.hpp"
