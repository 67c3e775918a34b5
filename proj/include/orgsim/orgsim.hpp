#pragma once

#include "orgsim/agent.hpp"
#include "orgsim/common.hpp"
#include "orgsim/config.hpp"
#include "orgsim/engine.hpp"
#include "orgsim/interaction.hpp"
#include "orgsim/io.hpp"
#include "orgsim/landscape.hpp"
#include "orgsim/landscape_io.hpp"
#include "orgsim/metrics.hpp"
#include "orgsim/network.hpp"
