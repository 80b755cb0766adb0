#pragma once

#include "qdiscord/bloch.hpp"
#include "qdiscord/discord.hpp"
#include "qdiscord/io.hpp"
#include "qdiscord/measure.hpp"
#include "qdiscord/optimize.hpp"
#include "qdiscord/run.hpp"
#include "qdiscord/states.hpp"
#include "qdiscord/su_basis.hpp"
#include "qdiscord/types.hpp"
