package shop.core;

public class Entity {
    long id;

    long getId() {
        return id;
    }

    void touch() {
        id = id + 1;
    }
}
