/* C interface of the gtrec library. Handles are opaque; every call that can
 * fail returns a gtrec_status and leaves a message in gtrec_last_error().
 * Strings returned through char** are owned by the caller and released with
 * gtrec_string_free(). */
#ifndef GTREC_GTREC_H
#define GTREC_GTREC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(GTREC_BUILDING)
#    define GTREC_API __declspec(dllexport)
#  else
#    define GTREC_API __declspec(dllimport)
#  endif
#else
#  define GTREC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gtrec_status {
  GTREC_OK = 0,
  GTREC_NEGATIVE = 1,        /* inconsistent, no species tree, infeasible, invalid map */
  GTREC_INPUT_ERROR = 2,     /* malformed text */
  GTREC_REJECTED = 3,        /* input fails the observability axioms; JSON is filled */
  GTREC_DOMAIN_ERROR = 4,    /* an operation's precondition does not hold */
  GTREC_INVALID_ARGUMENT = 5,
  GTREC_INTERNAL_ERROR = 6
} gtrec_status;

typedef struct gtrec_gene_tree gtrec_gene_tree;
typedef struct gtrec_species_tree gtrec_species_tree;

typedef struct gtrec_sim_config {
  double duplication_rate;
  double transfer_rate;
  double loss_rate;
  uint64_t seed;
  uint32_t count;     /* scenarios; scenario i uses seed + i */
  uint32_t max_genes; /* 0 selects the default bound */
  int restricted;     /* admit only trees passing O3.A as well */
} gtrec_sim_config;

GTREC_API const char* gtrec_version(void);
/* Message of the last failed call on this thread, "" if none. */
GTREC_API const char* gtrec_last_error(void);
GTREC_API void gtrec_string_free(char* s);

/* sidecar_tsv may be NULL. */
GTREC_API gtrec_status gtrec_gene_tree_parse(const char* newick, const char* sidecar_tsv,
                                             gtrec_gene_tree** out);
GTREC_API void gtrec_gene_tree_free(gtrec_gene_tree* g);
GTREC_API size_t gtrec_gene_tree_size(const gtrec_gene_tree* g);
GTREC_API gtrec_status gtrec_gene_tree_serialize(const gtrec_gene_tree* g, int nhx, char** out);

/* Unplanted input is planted on parse; planted input is kept. */
GTREC_API gtrec_status gtrec_species_tree_parse(const char* newick, gtrec_species_tree** out);
GTREC_API void gtrec_species_tree_free(gtrec_species_tree* s);
GTREC_API gtrec_status gtrec_species_tree_serialize(const gtrec_species_tree* s, int planted,
                                                    char** out);

/* Observability report; GTREC_OK whenever the report was produced. */
GTREC_API gtrec_status gtrec_validate(const gtrec_gene_tree* g, int restricted, char** json);
/* Informative triples per set, the species triples and their consistency. */
GTREC_API gtrec_status gtrec_triples(const gtrec_gene_tree* g, char** json);
/* BUILD on a triple list in `a b | c` lines. GTREC_NEGATIVE when inconsistent. */
GTREC_API gtrec_status gtrec_build(const char* triples_text, char** json);
/* Species tree and reconciliation map. GTREC_NEGATIVE when no species tree
 * exists, GTREC_REJECTED for unobservable input. */
GTREC_API gtrec_status gtrec_infer(const gtrec_gene_tree* g, int restricted, char** json);
/* Validates a supplied map. GTREC_NEGATIVE when an axiom fails. */
GTREC_API gtrec_status gtrec_reconcile(const gtrec_gene_tree* g, const gtrec_species_tree* s,
                                       const char* map_text, int restricted, char** json);
/* Time consistency of a supplied map, or of the constructed one when map_text
 * is NULL. GTREC_NEGATIVE when infeasible. */
GTREC_API gtrec_status gtrec_timecheck(const gtrec_gene_tree* g, const gtrec_species_tree* s,
                                       const char* map_text, char** json);
/* Simulated histories and their observable trees; branch lengths of the
 * species tree give its times. */
GTREC_API gtrec_status gtrec_simulate(const gtrec_species_tree* s, const gtrec_sim_config* cfg,
                                      char** json);
/* Triple consistency against exhaustive search over species trees.
 * GTREC_NEGATIVE if the two disagree. */
GTREC_API gtrec_status gtrec_oracle(const gtrec_gene_tree* g, int restricted, char** json);

#ifdef __cplusplus
}
#endif

#endif /* GTREC_GTREC_H */
