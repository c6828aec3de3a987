/* retype.h - C interface to the retype engine.
 *
 * Every function returns 0 on success or a nonzero status code matching the
 * engine's error categories (see retype_status_name). When a call fails and
 * err_out is non-NULL, *err_out receives a heap-allocated message; release
 * it with retype_string_free. All other returned strings follow the same
 * ownership rule.
 *
 * A retype_session holds an immutable snapshot of the project plus the
 * resolved catalog. Plans borrow their session: keep the session open for
 * as long as any of its plans is in use. After a successful apply, the
 * session still reflects the pre-apply snapshot; open a fresh session to
 * observe the rewritten files.
 */
#ifndef RETYPE_RETYPE_H
#define RETYPE_RETYPE_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct retype_session retype_session;
typedef struct retype_plan retype_plan;

/* Library version as "major.minor.patch". Static storage; do not free. */
const char* retype_version(void);

/* Human label for a status code ("ok", "io", "parse", ...). Static storage. */
const char* retype_status_name(int status);

void retype_string_free(char* s);

/* Opens the project under project_root. catalog_path selects the rule
 * catalog; pass NULL to fall back to $RETYPE_CATALOG, then
 * <project_root>/typechanges.json, then the built-in catalog. */
int retype_session_open(const char* project_root, const char* catalog_path,
                        retype_session** session_out, char** err_out);
void retype_session_close(retype_session* session);

/* Newline-terminated lines for files that failed to parse, empty string
 * when all parsed. */
int retype_session_parse_warnings(retype_session* session, char** out,
                                  char** err_out);

/* One line per pattern: id, from => to, mode, priority, rule count; sorted
 * by priority. */
int retype_list_patterns(retype_session* session, char** out, char** err_out);

/* Validates a catalog file on its own: 0 and *out = "OK" when loadable,
 * otherwise the schema status with the diagnostic in *err_out. */
int retype_validate_catalog(const char* catalog_path, char** out,
                            char** err_out);

/* Plans a migration. root_selector is "file:line:col" or
 * "file#Class.member"; pattern_selector is a pattern id or "from=>to";
 * scope is "local", "file", or "project". */
int retype_plan_create(retype_session* session, const char* root_selector,
                       const char* pattern_selector, const char* scope,
                       retype_plan** plan_out, char** err_out);
void retype_plan_free(retype_plan* plan);

/* Usage accounting of a plan; any pointer may be NULL. */
int retype_plan_counts(retype_plan* plan, int* found, int* rewritten,
                       int* covered, int* failed);

/* Report of the planned migration: human text or a JSON document.
 * relative_paths != 0 keeps all paths project-relative. */
int retype_plan_report(retype_plan* plan, int as_json, int relative_paths,
                       char** out, char** err_out);

/* Unified diff of the plan's effect across all touched files. */
int retype_plan_diff(retype_plan* plan, int relative_paths, char** out,
                     char** err_out);

/* Writes the plan to disk behind the project lock and records a journal
 * entry; *journal_out receives the entry's path. */
int retype_plan_apply(retype_plan* plan, char** journal_out, char** err_out);

/* Reverts a journal entry (the newest when journal_path is NULL) and marks
 * it consumed. *files_out, when non-NULL, receives the restored
 * project-relative paths, one per line. */
int retype_undo(const char* project_root, const char* journal_path,
                char** files_out, char** err_out);

/* Scans for declarations of discouraged types. *out receives diagnostics
 * as text or JSON lines; *count_out the number found. */
int retype_inspect(retype_session* session, int as_json, int relative_paths,
                   char** out, int* count_out, char** err_out);

/* Compares two versions of a file and reports completable manual type
 * changes. catalog_path resolution: explicit, $RETYPE_CATALOG,
 * ./typechanges.json, built-in. new_path labels the output and seeds the
 * printed apply commands; warnings (one per line) land in *warnings_out
 * when non-NULL. */
int retype_suggest(const char* catalog_path, const char* old_path,
                   const char* new_path, int as_json, char** out,
                   int* count_out, char** warnings_out, char** err_out);

#ifdef __cplusplus
}
#endif

#endif /* RETYPE_RETYPE_H */
