/** Request-flow plumbing: rate limiting, mutation serialization, and
 * stale-response detection. No DOM and no service knowledge here. */

/** Runs `fire` with the most recent value, at most once per interval.
 *
 * The first push fires immediately; pushes arriving inside the interval are
 * coalesced into one trailing call carrying the latest value. With a 200 ms
 * interval this caps style traffic at 5 requests per second.
 */
export class CoalescingLimiter<T> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private lastFired = -Infinity;
  private pending: { value: T } | null = null;

  constructor(
    private readonly intervalMs: number,
    private readonly fire: (value: T) => void,
    private readonly now: () => number = () => Date.now(),
  ) {}

  push(value: T): void {
    const wait = this.lastFired + this.intervalMs - this.now();
    if (wait <= 0 && this.timer === null) {
      this.lastFired = this.now();
      this.fire(value);
      return;
    }
    this.pending = { value };
    if (this.timer === null) {
      this.timer = setTimeout(() => this.flush(), Math.max(wait, 0));
    }
  }

  private flush(): void {
    this.timer = null;
    if (!this.pending) {
      return;
    }
    const { value } = this.pending;
    this.pending = null;
    this.lastFired = this.now();
    this.fire(value);
  }

  /** Cancel any trailing call (used on teardown). */
  dispose(): void {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    this.pending = null;
  }
}

/** At most one mutation in flight; while busy, newly submitted mutations
 * replace each other so only the latest parked one runs afterwards. */
export class MutationQueue {
  private busy = false;
  private parked: (() => Promise<void>) | null = null;

  constructor(private readonly onError: (error: unknown) => void) {}

  get inFlight(): boolean {
    return this.busy;
  }

  submit(mutation: () => Promise<void>): void {
    if (this.busy) {
      this.parked = mutation;
      return;
    }
    this.busy = true;
    void this.drain(mutation);
  }

  private async drain(first: () => Promise<void>): Promise<void> {
    let current: (() => Promise<void>) | null = first;
    while (current) {
      try {
        await current();
      } catch (error) {
        this.onError(error);
      }
      current = this.parked;
      this.parked = null;
    }
    this.busy = false;
  }
}

/** Monotonic tickets for view refetches; a response is applied only when its
 * ticket is still the newest one issued. */
export class StaleGuard {
  private latest = 0;

  issue(): number {
    return ++this.latest;
  }

  isCurrent(ticket: number): boolean {
    return ticket === this.latest;
  }
}
