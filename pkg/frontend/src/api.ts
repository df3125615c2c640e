// Typed client for the composition service. Every method is one endpoint;
// all workspace state lives on the server.

import type {
    ApplicationDocument,
    Direction,
    Placement,
    Scope,
    Suggestion,
    SuggestionMode,
} from "./types.js";

export class ApiError extends Error {
    constructor(
        readonly status: number,
        readonly code: string,
        message: string,
        readonly subject: string,
    ) {
        super(message);
        this.name = "ApiError";
    }
}

async function fail(response: Response): Promise<never> {
    let code = "error";
    let message = `${response.status} ${response.statusText}`;
    let subject = "";
    try {
        const body = await response.json();
        if (typeof body.code === "string") code = body.code;
        if (typeof body.message === "string") message = body.message;
        if (typeof body.subject === "string") subject = body.subject;
    } catch {
        // non-JSON error body; keep the status line
    }
    throw new ApiError(response.status, code, message, subject);
}

export class ApiClient {
    constructor(readonly baseUrl: string = "http://127.0.0.1:8765") {}

    private async request(method: string, path: string, body?: unknown): Promise<Response> {
        const init: RequestInit = { method };
        if (body !== undefined) {
            init.headers = { "content-type": "application/json" };
            init.body = JSON.stringify(body);
        }
        const response = await fetch(this.baseUrl + path, init);
        if (!response.ok) await fail(response);
        return response;
    }

    async createWorkspace(): Promise<string> {
        const response = await this.request("POST", "/workspaces");
        const data = await response.json();
        return data.id as string;
    }

    async loadApplication(workspace: string, document: ApplicationDocument): Promise<string> {
        const response = await this.request("POST", `/workspaces/${workspace}/apps`, document);
        const data = await response.json();
        return data.id as string;
    }

    async storeDump(workspace: string): Promise<string> {
        const response = await this.request("GET", `/workspaces/${workspace}/store`);
        return response.text();
    }

    async selection(workspace: string): Promise<string[]> {
        const response = await this.request("GET", `/workspaces/${workspace}/selection`);
        const data = await response.json();
        return data.items as string[];
    }

    async select(workspace: string, component: string): Promise<string[]> {
        const response = await this.request(
            "POST",
            `/workspaces/${workspace}/selection/select`,
            { component },
        );
        return (await response.json()).items as string[];
    }

    async deselect(workspace: string, component: string): Promise<string[]> {
        const response = await this.request(
            "POST",
            `/workspaces/${workspace}/selection/deselect`,
            { component },
        );
        return (await response.json()).items as string[];
    }

    async extendLayout(
        workspace: string,
        directions: Direction[],
        scope: Scope,
    ): Promise<string[]> {
        const response = await this.request(
            "POST",
            `/workspaces/${workspace}/selection/extend/layout`,
            { directions, scope },
        );
        return (await response.json()).items as string[];
    }

    async extend(workspace: string, kind: "parent" | "task" | "functionality"): Promise<string[]> {
        const response = await this.request(
            "POST",
            `/workspaces/${workspace}/selection/extend/${kind}`,
            {},
        );
        return (await response.json()).items as string[];
    }

    async suggestions(workspace: string, mode: SuggestionMode): Promise<Suggestion[]> {
        const response = await this.request(
            "GET",
            `/workspaces/${workspace}/suggestions?mode=${mode}`,
        );
        return (await response.json()) as Suggestion[];
    }

    async extract(workspace: string, target: string, name?: string): Promise<string> {
        const body: Record<string, string> = { target };
        if (name !== undefined) body.name = name;
        const response = await this.request("POST", `/workspaces/${workspace}/extract`, body);
        return (await response.json()).screen as string;
    }

    async place(
        workspace: string,
        screen: string,
        subject: string,
        relation: Direction,
        anchor: string,
    ): Promise<Placement> {
        const response = await this.request(
            "POST",
            `/workspaces/${workspace}/screens/${screen}/place`,
            { subject, relation, anchor },
        );
        const data = await response.json();
        return data.placement as Placement;
    }

    async exportText(workspace: string): Promise<string> {
        const response = await this.request("GET", `/workspaces/${workspace}/export`);
        return response.text();
    }
}
