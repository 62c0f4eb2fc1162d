/**
 * Node bindings for the shona-morph analyzer.
 *
 * The engine is driven entirely through its command-line interface: each
 * annotate call spawns the CLI in jsonl mode and parses the records it
 * writes. Records are field-for-field identical to the engine's JSON
 * export, and `toJsonLines` reproduces the CLI's jsonl bytes exactly.
 */

import { spawnSync } from "node:child_process";
import { existsSync } from "node:fs";

/** One token annotation, as exported by the engine. */
export interface AnnotationRecord {
  sentence_id: number;
  token_id: number;
  token: string;
  lemma: string;
  pos: string;
  category_detail: string;
  morph_features: string;
  tense: string;
  aspect: string;
  mood: string;
  person: string;
  number: string;
  gender: string;
  clitic_type: string;
  dependency_relation: string;
  gloss: string;
  comments: string;
  provenance: string;
}

export interface AnalyzerOptions {
  /** Path to the lexicon JSON file; omit to run rules-only. */
  lexiconPath?: string;
  /** Path to a rule-table JSON file (default: the engine's built-in). */
  tablesPath?: string;
  /** Python executable used to run the engine (default: python3). */
  python?: string;
  /** Extra PYTHONPATH entry, for running against an uninstalled checkout. */
  pythonPath?: string;
}

/** Serialize one record exactly as the engine's jsonl writer does. */
function serializeRecord(record: AnnotationRecord): string {
  const parts = Object.entries(record).map(
    ([key, value]) => `${JSON.stringify(key)}: ${JSON.stringify(value)}`,
  );
  return `{${parts.join(", ")}}`;
}

/** Render records as jsonl, byte-identical to the CLI's --format jsonl. */
export function toJsonLines(records: AnnotationRecord[]): string {
  return records.map((record) => serializeRecord(record) + "\n").join("");
}

export class BoundAnalyzer {
  private closed = false;

  constructor(private readonly options: AnalyzerOptions) {
    if (options.lexiconPath && !existsSync(options.lexiconPath)) {
      throw new Error(`lexicon file not found: ${options.lexiconPath}`);
    }
    if (options.tablesPath && !existsSync(options.tablesPath)) {
      throw new Error(`rule table file not found: ${options.tablesPath}`);
    }
  }

  /** Raw jsonl output of the engine for `text`. */
  annotateRaw(text: string): string {
    if (this.closed) {
      throw new Error("analyzer is closed");
    }
    const args = ["-m", "shona_morph", "analyze", "--format", "jsonl"];
    if (this.options.lexiconPath) {
      args.push("--lexicon", this.options.lexiconPath);
    } else {
      args.push("--no-lexicon");
    }
    if (this.options.tablesPath) {
      args.push("--tables", this.options.tablesPath);
    }
    const env = { ...process.env };
    if (this.options.pythonPath) {
      env.PYTHONPATH = this.options.pythonPath
        + (env.PYTHONPATH ? `:${env.PYTHONPATH}` : "");
    }
    const result = spawnSync(this.options.python ?? "python3", args, {
      input: text,
      encoding: "utf8",
      env,
      maxBuffer: 64 * 1024 * 1024,
    });
    if (result.error) {
      throw result.error;
    }
    if (result.status !== 0) {
      throw new Error(
        `analyzer exited with code ${result.status}: ${result.stderr.trim()}`,
      );
    }
    return result.stdout;
  }

  /** Annotate `text` and return the engine's records. */
  annotate(text: string): AnnotationRecord[] {
    return this.annotateRaw(text)
      .split("\n")
      .filter((line) => line.length > 0)
      .map((line) => JSON.parse(line) as AnnotationRecord);
  }

  /** Release the handle; any further call throws. */
  close(): void {
    this.closed = true;
  }

  get isClosed(): boolean {
    return this.closed;
  }
}

/** Open an analyzer over a lexicon (and optional rule tables). */
export function openAnalyzer(options: AnalyzerOptions = {}): BoundAnalyzer {
  return new BoundAnalyzer(options);
}
