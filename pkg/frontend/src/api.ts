/**
 * Typed client for the rulebridge API.
 *
 * Transport failures (service down, network error) and API failures (an
 * error envelope with a code) are distinct situations for the UI: the first
 * shows the unreachable banner with a retry, the second is a bug or a bad
 * request and surfaces as a message. They map to two error classes so
 * callers can tell them apart with instanceof.
 */

import type {
  ApiErrorEnvelope,
  CatalogResponse,
  HealthResponse,
  MethodName,
  ReviewDto,
  ReviewPayload,
  TermKind,
  TranslationResponse,
} from "./types.js";

/** A response with a non-2xx status; carries the envelope's error code. */
export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail?: unknown;

  constructor(status: number, code: string, message: string, detail?: unknown) {
    super(message);
    this.name = "ApiError";
    this.status = status;
    this.code = code;
    this.detail = detail;
  }
}

/** The service could not be reached at all (connection refused, DNS, ...). */
export class ServiceUnreachableError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "ServiceUnreachableError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

function isEnvelope(body: unknown): body is ApiErrorEnvelope {
  return (
    typeof body === "object" &&
    body !== null &&
    typeof (body as ApiErrorEnvelope).error === "object" &&
    (body as ApiErrorEnvelope).error !== null &&
    typeof (body as ApiErrorEnvelope).error.code === "string"
  );
}

export class ApiClient {
  private readonly baseUrl: string;
  private readonly fetchFn: FetchLike;

  constructor(baseUrl = "", fetchFn?: FetchLike) {
    this.baseUrl = baseUrl.replace(/\/$/, "");
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let response: Response;
    try {
      response = await this.fetchFn(this.baseUrl + path, init);
    } catch (err) {
      throw new ServiceUnreachableError(
        `service unreachable: ${err instanceof Error ? err.message : String(err)}`,
      );
    }
    if (!response.ok) {
      let code = "internal-error";
      let message = `request failed with HTTP ${response.status}`;
      let detail: unknown;
      try {
        const body: unknown = await response.json();
        if (isEnvelope(body)) {
          code = body.error.code;
          message = body.error.message;
          detail = body.error.detail;
        }
      } catch {
        // non-JSON error body: keep the generic message
      }
      throw new ApiError(response.status, code, message, detail);
    }
    return (await response.json()) as T;
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.request<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  health(): Promise<HealthResponse> {
    return this.request<HealthResponse>("/api/health");
  }

  catalog(kind: TermKind): Promise<CatalogResponse> {
    return this.request<CatalogResponse>(`/api/catalog/${kind}`);
  }

  translate(
    name: string,
    kind: TermKind,
    method: MethodName,
    top?: number,
  ): Promise<TranslationResponse> {
    const body: Record<string, unknown> = { name, kind, method };
    if (top !== undefined) {
      body.top = top;
    }
    return this.post<TranslationResponse>("/api/translate", body);
  }

  async listReviews(): Promise<ReviewDto[]> {
    const body = await this.request<{ reviews: ReviewDto[] }>("/api/reviews");
    return body.reviews;
  }

  submitReview(payload: ReviewPayload): Promise<ReviewDto> {
    return this.post<ReviewDto>("/api/reviews", payload);
  }
}
