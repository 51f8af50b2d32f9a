export interface Debounced<A extends unknown[]> {
  (...args: A): void;
  /** Run a pending call immediately (used when a drag is released). */
  flush(): void;
  cancel(): void;
  pending(): boolean;
}

/** Trailing-edge debounce: at most one underlying call per wait window. */
export function debounce<A extends unknown[]>(fn: (...args: A) => void,
                                              waitMs: number): Debounced<A> {
  let timer: ReturnType<typeof setTimeout> | null = null;
  let lastArgs: A | null = null;

  const run = () => {
    timer = null;
    if (lastArgs !== null) {
      const args = lastArgs;
      lastArgs = null;
      fn(...args);
    }
  };

  const debounced = (...args: A) => {
    lastArgs = args;
    if (timer !== null) clearTimeout(timer);
    timer = setTimeout(run, waitMs);
  };
  debounced.flush = () => {
    if (timer !== null) {
      clearTimeout(timer);
      run();
    }
  };
  debounced.cancel = () => {
    if (timer !== null) clearTimeout(timer);
    timer = null;
    lastArgs = null;
  };
  debounced.pending = () => timer !== null;
  return debounced;
}
