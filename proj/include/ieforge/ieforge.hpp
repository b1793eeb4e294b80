#pragma once

#include "ieforge/clean.hpp"
#include "ieforge/errors.hpp"
#include "ieforge/evaluate.hpp"
#include "ieforge/generate.hpp"
#include "ieforge/ingest.hpp"
#include "ieforge/json_io.hpp"
#include "ieforge/model.hpp"
#include "ieforge/pipeline.hpp"
#include "ieforge/rng.hpp"
#include "ieforge/schema.hpp"
#include "ieforge/text.hpp"
