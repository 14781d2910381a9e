#pragma once

// Convenience include for the whole toolkit: corpus ingestion, vocabulary,
// co-occurrence counting, GloVe training, association tests, contingency
// statistics, and report assembly.

#include "embias/corpus.hpp"
#include "embias/vocab.hpp"
#include "embias/cooccur.hpp"
#include "embias/glove.hpp"
#include "embias/wordsets.hpp"
#include "embias/wordlists.hpp"
#include "embias/weat.hpp"
#include "embias/stats.hpp"
#include "embias/report.hpp"
