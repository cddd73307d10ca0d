/* C interface to the resolution engine.  One job = one command + one input
 * document + options; running it yields a status code plus rendered output.
 * All strings are copied in; output pointers stay valid until the next
 * latres_job_run or latres_job_free on the same handle. */
#ifndef LATRES_H
#define LATRES_H

#ifdef __cplusplus
extern "C" {
#endif

#define LATRES_OK 0            /* command succeeded, output certified */
#define LATRES_VERIFY_FAIL 1   /* verification failed or output uncertified */
#define LATRES_INVALID_INPUT 2 /* bad input document or options; see error() */
#define LATRES_ERROR 3         /* internal failure */

typedef struct latres_job latres_job;

latres_job* latres_job_new(void);
void latres_job_free(latres_job* job);

/* command: lattice, koszul, betti, forest, primes, paths, resolve, descend,
 * or verify */
void latres_job_set_command(latres_job* job, const char* command);

/* input document contents (JSON text), not a file path */
void latres_job_set_input(latres_job* job, const char* json_text);

/* keys: field ("q" or "fp:<p>"), bound, radius-cap, mode ("canonical-basis"
 * or "community"), seed, jobs, format ("json" or "text"), degree (repeatable;
 * comma-separated integer coordinates, e.g. "1,1").
 * Returns 0 on success, nonzero on an unknown key or unparsable value. */
int latres_job_set_option(latres_job* job, const char* key, const char* value);

/* Runs the configured job and returns one of the status codes above. */
int latres_job_run(latres_job* job);

const char* latres_job_output(const latres_job* job);
const char* latres_job_error(const latres_job* job);

const char* latres_version(void);

#ifdef __cplusplus
}
#endif

#endif /* LATRES_H */
